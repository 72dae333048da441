//! Regenerates the document corpus under fixtures/. Run from the workspace
//! root: `cargo run -p bfly --example gen_fixtures`.

use bfly::braid::enumerate_braidings;
use bfly::butterfly::identity_butterfly;
use bfly::doc::*;
use bfly::functor::{canonical_section, phi};
use bfly::xmod::{Homotopy, StrictMorphism};
use bfly::{samples, Budget};
use std::path::Path;

fn put(dir: &Path, name: &str, p: &Payload) {
    write_document(&dir.join(name), p).expect("fixture written");
    println!("{name}");
}

fn main() {
    let dir = Path::new("fixtures");
    std::fs::create_dir_all(dir).expect("fixtures directory");
    let budget = Budget::default();

    for (name, g) in [
        ("z2", samples::z(2)),
        ("z3", samples::z(3)),
        ("z4", samples::z(4)),
        ("v4", samples::v4()),
        ("s3", samples::s3()),
        ("trivial", bfly::group::FiniteGroup::trivial()),
    ] {
        put(dir, &format!("{name}.group.json"), &Payload::Group(GroupDoc::of(&g)));
    }

    for (name, xm) in samples::all_xmods() {
        let mut d = XmodDoc::of(&xm);
        // exercise references where a fixture group file exists
        for (gname, g) in
            [("z2", samples::z(2)), ("z3", samples::z(3)), ("z4", samples::z(4))]
        {
            let r = OrRef::Ref(RefDoc { target: format!("{gname}.group.json") });
            if xm.g1 == g {
                d.g1 = r.clone();
            }
            if xm.g0 == g {
                d.g0 = r;
            }
        }
        put(dir, &format!("{name}.xmod.json"), &Payload::Xmod(d));
    }

    put(
        dir,
        "z4-butterfly.json",
        &Payload::Butterfly(ButterflyDoc::of(&samples::z4_butterfly())),
    );
    put(
        dir,
        "v4-butterfly.json",
        &Payload::Butterfly(ButterflyDoc::of(&samples::v4_butterfly())),
    );
    let xm = samples::xm_z2_z2_zero();
    for (name, x) in [
        ("id-z2-z2-zero", xm.clone()),
        ("id-disc-z2", samples::xm_disc_z2()),
        ("id-bz2", samples::xm_bz2()),
    ] {
        put(
            dir,
            &format!("{name}.butterfly.json"),
            &Payload::Butterfly(ButterflyDoc::of(&identity_butterfly(&x))),
        );
    }

    let id = StrictMorphism::identity(&xm);
    put(dir, "id-z2-z2-zero.strict.json", &Payload::Strict(StrictDoc::of(&id)));
    let trivial = Homotopy {
        from: id.clone(),
        to: id.clone(),
        gamma: vec![xm.g1.id(); xm.g0.order()],
    };
    put(dir, "id-z2-z2-zero.homotopy.json", &Payload::Homotopy(HomotopyDoc::of(&trivial)));
    put(
        dir,
        "z2-into-z4.hom.json",
        &Payload::Hom(HomDoc::of(&samples::xm_z2_z4().delta)),
    );

    let b = samples::z4_butterfly();
    let f = phi(&b, &canonical_section(&b)).expect("phi of the Z4 butterfly");
    put(dir, "z4-functor.json", &Payload::Functor(FunctorDoc::of(&f)));

    let braidings = enumerate_braidings(&xm, &budget).expect("braidings of [Z2 -> Z2] zero");
    assert_eq!(braidings.len(), 2);
    for br in &braidings {
        let name = if br.is_picard() { "braiding-z2-picard.json" } else { "braiding-z2-sym.json" };
        put(dir, name, &Payload::Braiding(BraidingDoc::of(br)));
    }

    for (name, xm) in [
        ("complex-0-z2", samples::xm_disc_z2()),
        ("complex-z2-0", samples::xm_bz2()),
        ("complex-z2-zero", samples::xm_z2_z2_zero()),
    ] {
        // reuse the crossed-module wings; the complex document only keeps
        // the two groups and the boundary
        let c = bfly::abelian::AbelianComplex::from_xmod(&xm).expect("abelian wings");
        put(dir, &format!("{name}.json"), &Payload::Complex(ComplexDoc::of(&c)));
    }
    let z2 = samples::z(2);
    let id_complex = bfly::abelian::validate_complex(
        &z2,
        &z2,
        &bfly::group::GroupHom::identity(&z2),
    )
    .expect("identity complex");
    put(dir, "complex-z2-id.json", &Payload::Complex(ComplexDoc::of(&id_complex)));
}
