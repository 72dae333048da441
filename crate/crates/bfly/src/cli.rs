//! Command-line front end. Every verb reads documents in the JSON format of
//! [`crate::doc`], prints a deterministic report, and exits with 0 on a
//! positive verdict, 1 on invalid input or a negative verdict, 2 on a usage
//! error, and 3 when a search budget is exceeded.

use crate::abelian::{
    baer_sum, cone_homology_check, ext_classes, ext_fibration_check, negate,
};
use crate::braid::{
    braiding_from_butterfly, enumerate_braidings, is_braided_butterfly, multiplication_butterfly,
};
use crate::budget::Budget;
use crate::butterfly::{
    compose, diagonal_homology, exact_sequence_check, find_butterfly_isomorphism, fraction,
    homotopy_kernel, Butterfly,
};
use crate::doc::{
    abelian_from_doc, read_document, write_document, ButterflyDoc, FunctorDoc, Payload, XmodDoc,
};
use crate::error::Error;
use crate::functor::{canonical_section, find_transformation, is_equivalence, phi, psi};
use crate::nerve::{classify_cocycles, enumerate_cocycles};
use crate::oracle::{enumerate_butterflies, enumerate_functors, enumerate_strict, prop6_check, theorem2_check};
use crate::xmod::CrossedModule;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "bfly", version, about = "Finite crossed modules and butterflies")]
struct Cli {
    /// Worker threads for bulk operations (order of results is unaffected).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print witnesses (sections, isomorphisms, homotopies).
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct OutOpt {
    /// Write the resulting document here instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Validate documents of any kind.
    Validate { files: Vec<PathBuf> },
    /// Homotopy groups π0 and π1 of a crossed module.
    Pi { file: PathBuf },
    /// Realize a crossed module as a strict monoidal groupoid and verify it.
    Realize { file: PathBuf },
    /// Compose two butterflies (first, then second).
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Flip a reversible butterfly.
    Flip {
        file: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Homotopy kernel of a butterfly.
    Kernel {
        file: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Homology of the NW-SE diagonal.
    Homology { file: PathBuf },
    /// Seven-term exact homotopy sequence.
    Exactseq { file: PathBuf },
    /// Homomorphic sections of π.
    Sections { file: PathBuf },
    /// Fraction decomposition through [H1×G1 → E].
    Fraction { file: PathBuf },
    /// Additive functor of a butterfly (canonical section).
    Phi {
        file: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Butterfly of an additive functor.
    Psi {
        file: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Round trip a butterfly through Φ/Ψ (or a functor through Ψ/Φ).
    Roundtrip { file: PathBuf },
    /// Braiding operations.
    Braid {
        #[command(subcommand)]
        cmd: BraidCmd,
    },
    /// Abelian butterfly operations.
    Abelian {
        #[command(subcommand)]
        cmd: AbelianCmd,
    },
    /// Descent cocycles of a crossed module over a finite cover.
    Cocycles {
        #[arg(long)]
        xmod: PathBuf,
        #[arg(long = "cover-size")]
        cover_size: usize,
        #[arg(long)]
        classify: bool,
    },
    /// Exhaustive enumeration of morphisms between two crossed modules.
    Enumerate {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        butterflies: bool,
        #[arg(long)]
        functors: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long = "check-thm2")]
        check_thm2: bool,
        #[arg(long = "check-prop6")]
        check_prop6: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BraidCmd {
    /// Validate a braiding and report its flavor.
    Check { file: PathBuf },
    /// All braidings of a crossed module.
    Enumerate { file: PathBuf },
    /// Multiplication butterfly X × X → X of a braiding.
    Butterfly {
        file: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Recover the braiding from its multiplication butterfly.
    FromButterfly { file: PathBuf },
    /// Check a butterfly is braided for braidings on its wings.
    BraidedCheck {
        butterfly: PathBuf,
        source_braiding: PathBuf,
        target_braiding: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum AbelianCmd {
    /// Baer sum of two abelian butterflies with the same wings.
    BaerSum {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Baer inverse of an abelian butterfly.
    Negate {
        file: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Classes of Ext(B0, A-1) for two abelian groups.
    Ext { quotient: PathBuf, kernel: PathBuf },
    /// The fibration of butterflies over Ext: surjectivity, lifting, fiber.
    FibrationCheck {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Compare diagonal homology with the cone of the fraction leg P.
    ConeCheck { file: PathBuf },
}

struct Failure {
    code: i32,
    msg: String,
}

type CliResult = std::result::Result<String, Failure>;

fn fail(e: Error) -> Failure {
    let code = match e {
        Error::SearchBudgetExceeded { .. } => 3,
        _ => 1,
    };
    Failure { code, msg: format!("{e}\n") }
}

pub fn run(args: &[String]) -> (i32, String) {
    let argv = std::iter::once("bfly".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.to_string());
        }
    };
    if cli.jobs == 0 {
        return (2, "--jobs must be at least 1\n".into());
    }
    let budget = Budget::from_env();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => return (2, format!("cannot create thread pool: {e}\n")),
    };
    match pool.install(|| dispatch(&cli, &budget)) {
        Ok(report) => (0, report),
        Err(f) => (f.code, f.msg),
    }
}

fn doc_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

fn load_butterfly(path: &Path) -> std::result::Result<Butterfly, Failure> {
    match read_document(path).map_err(fail)? {
        Payload::Butterfly(d) => d.to_butterfly(&doc_dir(path)).map_err(fail),
        other => Err(Failure {
            code: 1,
            msg: format!("{}: expected a butterfly document, found {}\n", path.display(), other.kind()),
        }),
    }
}

fn load_xmod(path: &Path) -> std::result::Result<CrossedModule, Failure> {
    match read_document(path).map_err(fail)? {
        Payload::Xmod(d) => d.to_xmod(&doc_dir(path)).map_err(fail),
        other => Err(Failure {
            code: 1,
            msg: format!("{}: expected an xmod document, found {}\n", path.display(), other.kind()),
        }),
    }
}

/// Write the document to `--out` or return its canonical text as the report.
fn emit(out: &OutOpt, p: &Payload) -> CliResult {
    match &out.out {
        Some(path) => {
            write_document(path, p).map_err(fail)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(crate::doc::render_document(p)),
    }
}

fn dispatch(cli: &Cli, budget: &Budget) -> CliResult {
    match &cli.verb {
        Verb::Validate { files } => validate(files, budget),
        Verb::Pi { file } => {
            let xm = load_xmod(file)?;
            let (p0, _) = xm.pi0();
            let (p1, _) = xm.pi1();
            Ok(format!("pi0 order: {}\npi1 order: {}\n", p0.order(), p1.order()))
        }
        Verb::Realize { file } => {
            let xm = load_xmod(file)?;
            xm.realize().verify().map_err(fail)?;
            Ok(format!(
                "realized; objects: {}; arrows: {}\n",
                xm.g0.order(),
                xm.g0.order() * xm.g1.order()
            ))
        }
        Verb::Compose { first, second, out } => {
            let a = load_butterfly(first)?;
            let b = load_butterfly(second)?;
            let c = compose(&a, &b).map_err(|e| match e {
                Error::MiddleMismatch => {
                    Failure { code: 1, msg: "middle crossed modules differ\n".into() }
                }
                other => fail(other),
            })?;
            emit(out, &Payload::Butterfly(ButterflyDoc::of(&c)))
        }
        Verb::Flip { file, out } => {
            let b = load_butterfly(file)?;
            let f = b.flip().map_err(fail)?;
            emit(out, &Payload::Butterfly(ButterflyDoc::of(&f)))
        }
        Verb::Kernel { file, out } => {
            let b = load_butterfly(file)?;
            let (ker, _) = homotopy_kernel(&b);
            let (p0, _) = ker.pi0();
            let (p1, _) = ker.pi1();
            let mut report = format!(
                "homotopy kernel: [order {} -> order {}]; pi0 order: {}; pi1 order: {}\n",
                ker.g1.order(),
                ker.g0.order(),
                p0.order(),
                p1.order()
            );
            if let Some(path) = &out.out {
                write_document(path, &Payload::Xmod(XmodDoc::of(&ker))).map_err(fail)?;
                let _ = writeln!(report, "wrote {}", path.display());
            }
            Ok(report)
        }
        Verb::Homology { file } => {
            let b = load_butterfly(file)?;
            let inv = diagonal_homology(&b);
            Ok(format!(
                "H^-2 order: {}\nH^-1 order: {}\nH^0 classes: {}\n",
                inv.h_minus2.order(),
                inv.h_minus1.order(),
                inv.h_zero.len()
            ))
        }
        Verb::Exactseq { file } => {
            let b = load_butterfly(file)?;
            let rep = exact_sequence_check(&b).map_err(fail)?;
            let mut report = String::new();
            for (name, order) in &rep.term_orders {
                let _ = writeln!(report, "{name} order: {order}");
            }
            if !rep.exact {
                return Err(Failure { code: 1, msg: report + "exact: false\n" });
            }
            Ok(report + "exact: true\n")
        }
        Verb::Sections { file } => {
            let b = load_butterfly(file)?;
            let sections = b.find_sections(budget).map_err(fail)?;
            let mut report =
                format!("sections: {}; splittable: {}\n", sections.len(), !sections.is_empty());
            if cli.verbose {
                for s in &sections {
                    let _ = writeln!(report, "s = {:?}", s.map);
                }
            }
            Ok(report)
        }
        Verb::Fraction { file } => {
            let b = load_butterfly(file)?;
            let (exm, q, _p) = fraction(&b);
            Ok(format!(
                "fraction: [order {} -> order {}]; Q quasi-isomorphism: {}\n",
                exm.g1.order(),
                exm.g0.order(),
                q.is_quasi_iso()
            ))
        }
        Verb::Phi { file, out } => {
            let b = load_butterfly(file)?;
            let f = phi(&b, &canonical_section(&b)).map_err(fail)?;
            emit(out, &Payload::Functor(FunctorDoc::of(&f)))
        }
        Verb::Psi { file, out } => {
            let p = read_document(file).map_err(fail)?;
            let f = match p {
                Payload::Functor(d) => d.to_functor(&doc_dir(file)).map_err(fail)?,
                other => {
                    return Err(Failure {
                        code: 1,
                        msg: format!(
                            "{}: expected a functor document, found {}\n",
                            file.display(),
                            other.kind()
                        ),
                    })
                }
            };
            let b = psi(&f).map_err(fail)?;
            emit(out, &Payload::Butterfly(ButterflyDoc::of(&b)))
        }
        Verb::Roundtrip { file } => roundtrip(file, budget, cli.verbose),
        Verb::Braid { cmd } => braid(cmd, budget, cli.verbose),
        Verb::Abelian { cmd } => abelian(cmd, budget, cli.verbose),
        Verb::Cocycles { xmod, cover_size, classify } => {
            let xm = load_xmod(xmod)?;
            let all = enumerate_cocycles(&xm, *cover_size, budget).map_err(fail)?;
            let mut report = format!("cocycles: {}\n", all.len());
            if *classify {
                let classes = classify_cocycles(&xm, *cover_size, budget).map_err(fail)?;
                let (p0, _) = xm.pi0();
                let _ = writeln!(report, "classes: {}; pi0 order: {}", classes.len(), p0.order());
                for c in &classes {
                    let _ = writeln!(report, "x = {:?}", c.x);
                }
            }
            Ok(report)
        }
        Verb::Enumerate { from, to, butterflies, functors, strict, check_thm2, check_prop6 } => {
            let h = load_xmod(from)?;
            let g = load_xmod(to)?;
            let mut report = String::new();
            let default = !(*butterflies || *functors || *strict || *check_thm2 || *check_prop6);
            if *butterflies || default {
                let r = enumerate_butterflies(&h, &g, budget).map_err(fail)?;
                let _ = writeln!(report, "butterflies raw: {}; classes: {}", r.raw_count, r.class_count);
            }
            if *functors {
                let r = enumerate_functors(&h, &g, budget).map_err(fail)?;
                let _ = writeln!(report, "functors raw: {}; classes: {}", r.raw_count, r.class_count);
            }
            if *strict {
                let r = enumerate_strict(&h, &g, budget).map_err(fail)?;
                let _ = writeln!(report, "strict raw: {}; classes: {}", r.raw_count, r.class_count);
            }
            if *check_thm2 {
                let r = theorem2_check(&h, &g, budget).map_err(fail)?;
                let _ = writeln!(
                    report,
                    "butterfly classes: {}; functor classes: {}; bijection: verified",
                    r.butterflies.class_count, r.functors.class_count
                );
            }
            if *check_prop6 {
                let r = prop6_check(&h, &g, budget).map_err(fail)?;
                let _ = writeln!(
                    report,
                    "split classes: {}; strict classes: {}; bijection: verified",
                    r.split_classes, r.strict_classes
                );
            }
            Ok(report)
        }
    }
}

fn validate(files: &[PathBuf], budget: &Budget) -> CliResult {
    if files.is_empty() {
        return Err(Failure { code: 2, msg: "validate: no files given\n".into() });
    }
    let lines: Vec<(bool, String)> =
        files.par_iter().map(|f| validate_one(f, budget)).collect();
    let mut report = String::new();
    let mut ok = true;
    for (f, (valid, line)) in files.iter().zip(&lines) {
        ok &= *valid;
        if files.len() > 1 {
            let _ = writeln!(report, "{}: {line}", f.display());
        } else {
            let _ = writeln!(report, "{line}");
        }
    }
    if ok {
        Ok(report)
    } else {
        Err(Failure { code: 1, msg: report })
    }
}

fn validate_one(path: &Path, budget: &Budget) -> (bool, String) {
    let dir = doc_dir(path);
    let verdict = read_document(path).and_then(|p| {
        Ok(match p {
            Payload::Group(d) => format!("valid; group of order {}", d.to_group()?.order()),
            Payload::Hom(d) => {
                d.to_hom(&dir)?;
                "valid; homomorphism".into()
            }
            Payload::Xmod(d) => {
                let xm = d.to_xmod(&dir)?;
                format!(
                    "valid; pi0 order: {}; pi1 order: {}",
                    xm.pi0().0.order(),
                    xm.pi1().0.order()
                )
            }
            Payload::Strict(d) => {
                d.to_strict(&dir)?;
                "valid; strict morphism".into()
            }
            Payload::Homotopy(d) => {
                d.to_homotopy(&dir)?;
                "valid; homotopy".into()
            }
            Payload::Butterfly(d) => {
                let b = d.to_butterfly(&dir)?;
                format!(
                    "valid; reversible: {}; splittable: {}",
                    b.is_reversible(),
                    b.is_splittable(budget)?
                )
            }
            Payload::Functor(d) => {
                let f = d.to_functor(&dir)?;
                format!("valid; equivalence: {}", is_equivalence(&f))
            }
            Payload::Braiding(d) => {
                let br = d.to_braiding(&dir)?;
                format!("valid; symmetric: {}; picard: {}", br.is_symmetric(), br.is_picard())
            }
            Payload::Complex(d) => {
                let c = d.to_complex(&dir)?;
                format!("valid; complex of orders {} -> {}", c.a_m1.order(), c.a_0.order())
            }
        })
    });
    match verdict {
        Ok(line) => (true, line),
        Err(e) => (false, format!("invalid; {e}")),
    }
}

fn roundtrip(file: &Path, budget: &Budget, verbose: bool) -> CliResult {
    match read_document(file).map_err(fail)? {
        Payload::Butterfly(d) => {
            let b = d.to_butterfly(&doc_dir(file)).map_err(fail)?;
            let f = phi(&b, &canonical_section(&b)).map_err(fail)?;
            let back = psi(&f).map_err(fail)?;
            match find_butterfly_isomorphism(&b, &back, budget).map_err(fail)? {
                Some(w) => {
                    let mut report = String::from("roundtrip: isomorphic: true\n");
                    if verbose {
                        let _ = writeln!(report, "phi = {:?}", w.phi.map);
                    }
                    Ok(report)
                }
                None => Err(Failure { code: 1, msg: "roundtrip: isomorphic: false\n".into() }),
            }
        }
        Payload::Functor(d) => {
            let f = d.to_functor(&doc_dir(file)).map_err(fail)?;
            let b = psi(&f).map_err(fail)?;
            let back = phi(&b, &canonical_section(&b)).map_err(fail)?;
            match find_transformation(&f, &back, budget).map_err(fail)? {
                Some(w) => {
                    let mut report = String::from("roundtrip: naturally isomorphic: true\n");
                    if verbose {
                        let _ = writeln!(report, "theta = {:?}", w.theta);
                    }
                    Ok(report)
                }
                None => {
                    Err(Failure { code: 1, msg: "roundtrip: naturally isomorphic: false\n".into() })
                }
            }
        }
        other => Err(Failure {
            code: 1,
            msg: format!(
                "{}: expected a butterfly or functor document, found {}\n",
                file.display(),
                other.kind()
            ),
        }),
    }
}

fn load_braiding(path: &Path) -> std::result::Result<crate::braid::Braiding, Failure> {
    match read_document(path).map_err(fail)? {
        Payload::Braiding(d) => d.to_braiding(&doc_dir(path)).map_err(fail),
        other => Err(Failure {
            code: 1,
            msg: format!("{}: expected a braiding document, found {}\n", path.display(), other.kind()),
        }),
    }
}

fn braid(cmd: &BraidCmd, budget: &Budget, verbose: bool) -> CliResult {
    match cmd {
        BraidCmd::Check { file } => {
            let br = load_braiding(file)?;
            Ok(format!("valid; symmetric: {}; picard: {}\n", br.is_symmetric(), br.is_picard()))
        }
        BraidCmd::Enumerate { file } => {
            let xm = load_xmod(file)?;
            let all = enumerate_braidings(&xm, budget).map_err(fail)?;
            let mut report = format!("braidings: {}\n", all.len());
            for br in &all {
                let _ = writeln!(
                    report,
                    "c = {:?}; symmetric: {}; picard: {}",
                    br.c.iter().flatten().collect::<Vec<_>>(),
                    br.is_symmetric(),
                    br.is_picard()
                );
            }
            Ok(report)
        }
        BraidCmd::Butterfly { file, out } => {
            let br = load_braiding(file)?;
            let mb = multiplication_butterfly(&br).map_err(fail)?;
            emit(out, &Payload::Butterfly(ButterflyDoc::of(&mb.bfly)))
        }
        BraidCmd::FromButterfly { file } => {
            let br = load_braiding(file)?;
            let mb = multiplication_butterfly(&br).map_err(fail)?;
            let back = braiding_from_butterfly(&mb).map_err(fail)?;
            if back == br {
                let mut report = String::from("recovered braiding matches: true\n");
                if verbose {
                    let _ = writeln!(report, "c = {:?}", back.c.iter().flatten().collect::<Vec<_>>());
                }
                Ok(report)
            } else {
                Err(Failure { code: 1, msg: "recovered braiding matches: false\n".into() })
            }
        }
        BraidCmd::BraidedCheck { butterfly, source_braiding, target_braiding } => {
            let b = load_butterfly(butterfly)?;
            let brh = load_braiding(source_braiding)?;
            let brg = load_braiding(target_braiding)?;
            if brh.xm != b.h || brg.xm != b.g {
                return Err(Failure {
                    code: 1,
                    msg: "braidings do not live on the butterfly wings\n".into(),
                });
            }
            if is_braided_butterfly(&b, &brh, &brg) {
                Ok("braided: true\n".into())
            } else {
                Err(Failure { code: 1, msg: "braided: false\n".into() })
            }
        }
    }
}

fn load_abelian(path: &Path) -> std::result::Result<crate::abelian::AbelianButterfly, Failure> {
    match read_document(path).map_err(fail)? {
        Payload::Butterfly(d) => abelian_from_doc(&d, &doc_dir(path)).map_err(fail),
        other => Err(Failure {
            code: 1,
            msg: format!("{}: expected a butterfly document, found {}\n", path.display(), other.kind()),
        }),
    }
}

fn load_complex(path: &Path) -> std::result::Result<crate::abelian::AbelianComplex, Failure> {
    match read_document(path).map_err(fail)? {
        Payload::Complex(d) => d.to_complex(&doc_dir(path)).map_err(fail),
        other => Err(Failure {
            code: 1,
            msg: format!("{}: expected a complex document, found {}\n", path.display(), other.kind()),
        }),
    }
}

fn abelian(cmd: &AbelianCmd, budget: &Budget, verbose: bool) -> CliResult {
    match cmd {
        AbelianCmd::BaerSum { first, second, out } => {
            let a = load_abelian(first)?;
            let b = load_abelian(second)?;
            let s = baer_sum(&a, &b).map_err(fail)?;
            emit(out, &Payload::Butterfly(ButterflyDoc::of(&s.to_butterfly().map_err(fail)?)))
        }
        AbelianCmd::Negate { file, out } => {
            let a = load_abelian(file)?;
            let n = negate(&a);
            emit(out, &Payload::Butterfly(ButterflyDoc::of(&n.to_butterfly().map_err(fail)?)))
        }
        AbelianCmd::Ext { quotient, kernel } => {
            let q = match read_document(quotient).map_err(fail)? {
                Payload::Group(d) => d.to_group().map_err(fail)?,
                other => {
                    return Err(Failure {
                        code: 1,
                        msg: format!("{}: expected a group document, found {}\n", quotient.display(), other.kind()),
                    })
                }
            };
            let n = match read_document(kernel).map_err(fail)? {
                Payload::Group(d) => d.to_group().map_err(fail)?,
                other => {
                    return Err(Failure {
                        code: 1,
                        msg: format!("{}: expected a group document, found {}\n", kernel.display(), other.kind()),
                    })
                }
            };
            let classes = ext_classes(&q, &n, budget).map_err(fail)?;
            let mut report = format!("ext classes: {}\n", classes.len());
            if verbose {
                for c in &classes {
                    let _ = writeln!(report, "factor set = {:?}", c.factor_set);
                }
            }
            Ok(report)
        }
        AbelianCmd::FibrationCheck { from, to } => {
            let source = load_complex(from)?;
            let target = load_complex(to)?;
            let r = ext_fibration_check(&source, &target, budget).map_err(fail)?;
            let report = format!(
                "ext classes: {}\nclasses hit: {:?}\nessentially surjective: {}\nlifting: {}\nstrict homotopy classes: {}\nsplit iso classes: {}\nkernel classes match: {}\nkernel automorphisms match: {}\n",
                r.ext_class_count,
                r.classes_hit,
                r.essentially_surjective,
                r.lifting_ok,
                r.strict_homotopy_classes,
                r.split_iso_classes,
                r.kernel_classes_match,
                r.kernel_automorphisms_match
            );
            if r.lifting_ok && r.kernel_classes_match && r.kernel_automorphisms_match {
                Ok(report)
            } else {
                Err(Failure { code: 1, msg: report })
            }
        }
        AbelianCmd::ConeCheck { file } => {
            let a = load_abelian(file)?;
            let r = cone_homology_check(&a, budget).map_err(fail)?;
            let mut report = String::new();
            for (i, (d, c)) in r.diagonal.iter().zip(&r.cone).enumerate() {
                let _ = writeln!(
                    report,
                    "H^{} diagonal order: {}; cone order: {}",
                    i as i32 - 2,
                    d.order(),
                    c.order()
                );
            }
            let _ = writeln!(report, "matches: {}", r.matches);
            if r.matches {
                Ok(report)
            } else {
                Err(Failure { code: 1, msg: report })
            }
        }
    }
}
