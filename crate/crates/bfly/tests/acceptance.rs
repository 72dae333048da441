//! Acceptance gate: one test and one pass line per criterion.

use bfly::abelian::{
    abelian_isomorphic, baer_sum, cone_homology_check, enumerate_abelian_butterflies,
    ext_classes, ext_fibration_check, validate_complex, zero_butterfly, AbelianComplex,
};
use bfly::braid::{braiding_from_butterfly, enumerate_braidings, is_braided_butterfly, multiplication_butterfly};
use bfly::butterfly::{compose, exact_sequence_check, find_butterfly_isomorphism, homotopy_kernel, identity_butterfly, Butterfly};
use bfly::functor::{canonical_section, compose_functors, find_transformation, induced_pi0, induced_pi1, is_equivalence, phi, psi};
use bfly::group::{FiniteGroup, GroupHom};
use bfly::nerve::{classify_cocycles, nerve};
use bfly::oracle::{enumerate_butterflies, enumerate_functors, prop6_check, theorem2_check};
use bfly::xmod::CrossedModule;
use bfly::{samples, Budget};

fn pairs() -> Vec<(CrossedModule, CrossedModule)> {
    vec![
        (samples::xm_disc_z2(), samples::xm_bz2()),
        (samples::xm_bz2(), samples::xm_disc_z2()),
        (samples::xm_z2_z2_zero(), samples::xm_z2_z2_zero()),
        (samples::xm_z2_z4(), samples::xm_z4_z2()),
        (samples::xm_z4_z2(), samples::xm_z2_z4()),
    ]
}

/// Every butterfly class representative over the fixture pairs, plus the
/// handmade samples; all have |E| ≤ 16.
fn butterfly_corpus(budget: &Budget) -> Vec<Butterfly> {
    let mut out = vec![samples::z4_butterfly(), samples::v4_butterfly()];
    for (h, g) in pairs() {
        out.extend(enumerate_butterflies(&h, &g, budget).unwrap().representatives);
    }
    assert!(out.iter().all(|b| b.e.order() <= 16));
    out
}

#[test]
fn criterion_1_theorem2_counts() {
    let budget = Budget::default();
    let start = std::time::Instant::now();
    let r1 = theorem2_check(&samples::xm_disc_z2(), &samples::xm_bz2(), &budget).unwrap();
    assert_eq!(r1.butterflies.class_count, 2);
    assert_eq!(r1.functors.class_count, 2);
    let xm = samples::xm_z2_z2_zero();
    let r2 = theorem2_check(&xm, &xm, &budget).unwrap();
    assert_eq!(r2.butterflies.class_count, r2.functors.class_count);
    let r3 = theorem2_check(&samples::xm_z2_z4(), &samples::xm_z4_z2(), &budget).unwrap();
    assert_eq!(r3.butterflies.class_count, r3.functors.class_count);
    assert!(r1.bijection_ok && r2.bijection_ok && r3.bijection_ok);
    assert!(start.elapsed().as_secs() < 180, "three pairs well under 60 s each");
    println!("criterion 1 (butterfly and functor class counts agree on all pairs): pass");
}

#[test]
fn criterion_2_phi_psi_round_trips() {
    let budget = Budget::default();
    for b in butterfly_corpus(&budget) {
        let f = phi(&b, &canonical_section(&b)).unwrap();
        let back = psi(&f).unwrap();
        assert!(
            find_butterfly_isomorphism(&b, &back, &budget).unwrap().is_some(),
            "psi(phi(b)) must be isomorphic to b"
        );
    }
    for (h, g) in pairs() {
        for f in enumerate_functors(&h, &g, &budget).unwrap().representatives {
            let b = psi(&f).unwrap();
            let back = phi(&b, &canonical_section(&b)).unwrap();
            assert!(
                find_transformation(&f, &back, &budget).unwrap().is_some(),
                "phi(psi(F)) must be naturally isomorphic to F"
            );
        }
    }
    println!("criterion 2 (phi/psi round trips witness both directions): pass");
}

#[test]
fn criterion_3_composition_soundness() {
    let budget = Budget::default();
    let xm = samples::xm_z2_z2_zero();
    let reps = enumerate_butterflies(&xm, &xm, &budget).unwrap().representatives;
    let id = identity_butterfly(&xm);
    let to_f = |b: &Butterfly| phi(b, &canonical_section(b)).unwrap();
    for a in &reps {
        // unit laws
        for u in [compose(a, &id).unwrap(), compose(&id, a).unwrap()] {
            assert!(find_butterfly_isomorphism(a, &u, &budget).unwrap().is_some());
        }
        // phi is functorial up to natural isomorphism
        for b in &reps {
            let lhs = to_f(&compose(a, b).unwrap());
            let rhs = compose_functors(&to_f(a), &to_f(b));
            assert!(find_transformation(&lhs, &rhs, &budget).unwrap().is_some());
        }
    }
    let mut triples = 0;
    for a in &reps {
        for b in &reps {
            for c in &reps {
                let left = compose(&compose(a, b).unwrap(), c).unwrap();
                let right = compose(a, &compose(b, c).unwrap()).unwrap();
                assert!(find_butterfly_isomorphism(&left, &right, &budget).unwrap().is_some());
                triples += 1;
            }
        }
    }
    assert!(triples >= 20, "at least 20 composable triples exercised");
    println!("criterion 3 (composition: units, functoriality, associativity on {triples} triples): pass");
}

#[test]
fn criterion_4_split_classes_are_strict_classes() {
    let budget = Budget::default();
    for (h, g) in pairs() {
        let r = prop6_check(&h, &g, &budget).unwrap();
        assert!(r.bijection_ok);
        assert_eq!(r.split_classes, r.strict_classes);
    }
    assert!(!samples::z4_butterfly().is_splittable(&budget).unwrap());
    println!("criterion 4 (split butterflies ↔ strict morphisms; Z4 center not splittable): pass");
}

#[test]
fn criterion_5_reversible_iff_equivalence() {
    let budget = Budget::default();
    for b in butterfly_corpus(&budget) {
        let f = phi(&b, &canonical_section(&b)).unwrap();
        assert_eq!(b.is_reversible(), is_equivalence(&f));
    }
    println!("criterion 5 (reversible ⟺ phi is an equivalence, whole corpus): pass");
}

#[test]
fn criterion_6_seven_term_exactness() {
    let budget = Budget::default();
    for b in butterfly_corpus(&budget) {
        let rep = exact_sequence_check(&b).unwrap();
        assert!(rep.exact);
    }
    let z4 = exact_sequence_check(&samples::z4_butterfly()).unwrap();
    let orders: Vec<usize> = z4.term_orders.iter().map(|&(_, n)| n).collect();
    assert_eq!(orders, vec![1, 1, 2, 4, 2, 1, 1]);
    println!("criterion 6 (seven-term sequence exact; Z4 instance 0→0→0→Z2→Z4→Z2→0→pt): pass");
}

#[test]
fn criterion_7_kernel_invariants_match_functor() {
    let budget = Budget::default();
    for b in butterfly_corpus(&budget) {
        let (ker, _) = homotopy_kernel(&b);
        let f = phi(&b, &canonical_section(&b)).unwrap();
        let p1: GroupHom = induced_pi1(&f);
        let p0: GroupHom = induced_pi0(&f);
        // π1 of the kernel is the kernel of the induced π1 map
        let pi1_ker = ker.pi1().0;
        let expected_pi1 = p1.kernel_members().len();
        assert_eq!(pi1_ker.order(), expected_pi1);
        // π0 of the kernel: kernel on π0 times cokernel on π1, by exactness
        let pi0_ker = ker.pi0().0;
        let coker_pi1 = p1.target.order() / p1.image_members().len();
        assert_eq!(pi0_ker.order(), p0.kernel_members().len() * coker_pi1);
    }
    println!("criterion 7 (homotopy-kernel invariants match the functor side): pass");
}

#[test]
fn criterion_8_braiding_suite() {
    let budget = Budget::default();
    let xm = samples::xm_z2_z2_zero();
    let braidings = enumerate_braidings(&xm, &budget).unwrap();
    assert_eq!(braidings.len(), 2);
    assert!(braidings.iter().all(|b| b.is_symmetric()));
    assert_eq!(braidings.iter().filter(|b| b.is_picard()).count(), 1);
    for (_, fixture) in samples::all_xmods() {
        for br in enumerate_braidings(&fixture, &budget).unwrap() {
            let mb = multiplication_butterfly(&br).unwrap();
            assert_eq!(braiding_from_butterfly(&mb).unwrap(), br);
        }
    }
    // the Z4 abelian instance is a braided butterfly for the unique
    // braidings of its (near-trivial) wings
    let z4 = samples::z4_butterfly();
    let brh = enumerate_braidings(&z4.h, &budget).unwrap();
    let brg = enumerate_braidings(&z4.g, &budget).unwrap();
    assert_eq!((brh.len(), brg.len()), (1, 1));
    assert!(is_braided_butterfly(&z4, &brh[0], &brg[0]));
    println!("criterion 8 (braidings: counts, round trips, braided Z4 instance): pass");
}

fn complex(a_m1: &FiniteGroup, a_0: &FiniteGroup, d: &[usize]) -> AbelianComplex {
    let hom = bfly::group::validate_hom(a_m1, a_0, d).unwrap();
    validate_complex(a_m1, a_0, &hom).unwrap()
}

#[test]
fn criterion_9_abelian_suite() {
    let budget = Budget::default();
    let one = FiniteGroup::trivial();
    let z2 = samples::z(2);
    let z3 = samples::z(3);
    let z4 = samples::z(4);
    assert_eq!(ext_classes(&z2, &z2, &budget).unwrap().len(), 2);
    assert_eq!(ext_classes(&z2, &z3, &budget).unwrap().len(), 1);
    assert_eq!(ext_classes(&z4, &z2, &budget).unwrap().len(), 2);

    // Baer sums of (Z2, Z2) butterflies: commutative, 2-torsion, unital
    let src = complex(&one, &z2, &[0]);
    let tgt = complex(&z2, &one, &[0, 0]);
    let all = enumerate_abelian_butterflies(&src, &tgt, &budget).unwrap();
    assert!(!all.is_empty());
    let zero = zero_butterfly(&src, &tgt);
    for a in &all {
        let twice = baer_sum(a, a).unwrap();
        assert!(abelian_isomorphic(&twice, &zero, &budget).unwrap());
        let unital = baer_sum(a, &zero).unwrap();
        assert!(abelian_isomorphic(&unital, a, &budget).unwrap());
        for b in &all {
            let ab = baer_sum(a, b).unwrap();
            let ba = baer_sum(b, a).unwrap();
            assert!(abelian_isomorphic(&ab, &ba, &budget).unwrap());
        }
        assert!(cone_homology_check(a, &budget).unwrap().matches);
    }

    // the fibration over Ext lifts, and essential surjectivity fails
    // exactly on the identity-boundary target
    let id_tgt = complex(&z2, &z2, &[0, 1]);
    let flagged = ext_fibration_check(&src, &id_tgt, &budget).unwrap();
    assert!(!flagged.essentially_surjective);
    assert!(flagged.lifting_ok && flagged.kernel_classes_match && flagged.kernel_automorphisms_match);
    let surjective = ext_fibration_check(&src, &tgt, &budget).unwrap();
    assert!(surjective.essentially_surjective && surjective.lifting_ok);
    for b in enumerate_abelian_butterflies(&src, &id_tgt, &budget).unwrap() {
        assert!(cone_homology_check(&b, &budget).unwrap().matches);
    }
    println!("criterion 9 (Ext counts, Baer sums, cone homology, fibration report): pass");
}

#[test]
fn criterion_10_descent_suite() {
    let budget = Budget::default();
    for (_, xm) in samples::all_xmods() {
        nerve(&xm).check_simplicial_identities().unwrap();
        let p0 = xm.pi0().0.order();
        for cover in 1..=3 {
            let classes = classify_cocycles(&xm, cover, &budget).unwrap();
            assert_eq!(classes.len(), p0, "cocycle classes must count pi0");
        }
    }
    println!("criterion 10 (simplicial identities; cocycle classes = |pi0| on covers 1-3): pass");
}

#[test]
fn criterion_11_cli_determinism() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let fx = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let verbs: Vec<Vec<String>> = vec![
        vec!["validate".into(), fx("z4-butterfly.json"), fx("a3-s3.xmod.json"), fx("braiding-z2-sym.json")],
        vec!["pi".into(), fx("z2-z4.xmod.json")],
        vec!["realize".into(), fx("a3-s3.xmod.json")],
        vec!["compose".into(), fx("z4-butterfly.json"), fx("id-bz2.butterfly.json")],
        vec!["flip".into(), fx("id-z2-z2-zero.butterfly.json")],
        vec!["kernel".into(), fx("z4-butterfly.json")],
        vec!["homology".into(), fx("z4-butterfly.json")],
        vec!["exactseq".into(), fx("z4-butterfly.json")],
        vec!["sections".into(), "--verbose".into(), fx("id-z2-z2-zero.butterfly.json")],
        vec!["fraction".into(), fx("z4-butterfly.json")],
        vec!["phi".into(), fx("z4-butterfly.json")],
        vec!["psi".into(), fx("z4-functor.json")],
        vec!["roundtrip".into(), fx("z4-butterfly.json")],
        vec!["braid".into(), "check".into(), fx("braiding-z2-picard.json")],
        vec!["braid".into(), "enumerate".into(), fx("z2-z2-zero.xmod.json")],
        vec!["braid".into(), "butterfly".into(), fx("braiding-z2-sym.json")],
        vec!["braid".into(), "from-butterfly".into(), fx("braiding-z2-sym.json")],
        vec!["abelian".into(), "ext".into(), "--verbose".into(), fx("z2.group.json"), fx("z2.group.json")],
        vec!["abelian".into(), "baer-sum".into(), fx("z4-butterfly.json"), fx("z4-butterfly.json")],
        vec!["abelian".into(), "negate".into(), fx("z4-butterfly.json")],
        vec!["abelian".into(), "cone-check".into(), fx("z4-butterfly.json")],
        vec!["abelian".into(), "fibration-check".into(), "--from".into(), fx("complex-0-z2.json"), "--to".into(), fx("complex-z2-0.json")],
        vec!["cocycles".into(), "--xmod".into(), fx("z2-z4.xmod.json"), "--cover-size".into(), "2".into(), "--classify".into()],
        vec!["enumerate".into(), "--from".into(), fx("disc-z2.xmod.json"), "--to".into(), fx("bz2.xmod.json"), "--check-thm2".into(), "--check-prop6".into()],
    ];
    for argv in &verbs {
        let (code, first) = bfly::cli::run(argv);
        assert_eq!(code, 0, "verb {argv:?} failed: {first}");
        for jobs in ["1", "4"] {
            let mut with_jobs = argv.clone();
            with_jobs.extend(["--jobs".to_string(), jobs.to_string()]);
            let (code2, again) = bfly::cli::run(&with_jobs);
            assert_eq!(code2, 0);
            assert_eq!(again, first, "report of {argv:?} must be byte-identical");
        }
    }
    println!("criterion 11 (every verb byte-deterministic, incl. --jobs > 1): pass");
}
