//! Shared small fixtures used by tests, the oracle sweeps, and the CLI
//! fixture generator. Everything here is deterministic.

use crate::group::{
    semidirect_product, subgroup_from_members, validate_action, validate_hom, FiniteGroup,
    GroupHom, RightAction,
};
use crate::xmod::{validate_xmod, CrossedModule};

pub fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

pub fn v4() -> FiniteGroup {
    let mut g = crate::group::direct_product(&z(2), &z(2));
    g.label = Some("V4".into());
    g
}

/// S3 as Z2 ⋉ Z3 with the inversion action; element (y, r) has index 3y + r.
pub fn s3() -> FiniteGroup {
    let inversion =
        validate_action(&z(2), &z(3), &[vec![0, 0], vec![1, 2], vec![2, 1]]).unwrap();
    let mut g = semidirect_product(&z(2), &z(3), &inversion).unwrap();
    g.label = Some("S3".into());
    g
}

/// [1 → Z2]: the discrete 2-group on Z2.
pub fn xm_disc_z2() -> CrossedModule {
    CrossedModule::discrete(&z(2))
}

/// [Z2 → 1]: one object, arrow group Z2.
pub fn xm_bz2() -> CrossedModule {
    CrossedModule::one_object(&z(2)).unwrap()
}

/// [Z2 →0 Z2] with the trivial action.
pub fn xm_z2_z2_zero() -> CrossedModule {
    let g = z(2);
    validate_xmod(
        &g,
        &g,
        &GroupHom::zero(&g, &g),
        &RightAction::trivial(&g, &g),
    )
    .unwrap()
}

/// [Z2 →×2 Z4] with the trivial action.
pub fn xm_z2_z4() -> CrossedModule {
    let a = z(2);
    let b = z(4);
    let delta = validate_hom(&a, &b, &[0, 2]).unwrap();
    validate_xmod(&a, &b, &delta, &RightAction::trivial(&b, &a)).unwrap()
}

/// [Z4 →mod2 Z2] with the trivial action.
pub fn xm_z4_z2() -> CrossedModule {
    let a = z(4);
    let b = z(2);
    let delta = validate_hom(&a, &b, &[0, 1, 0, 1]).unwrap();
    validate_xmod(&a, &b, &delta, &RightAction::trivial(&b, &a)).unwrap()
}

/// [A3 ↪ S3] with the conjugation action.
pub fn xm_a3_s3() -> CrossedModule {
    let g = s3();
    let members: Vec<usize> = g.elements().filter(|&e| g.element_order(e) != 2).collect();
    let (a3, inc) = subgroup_from_members(&g, &members).unwrap();
    let action = RightAction::by_conjugation(&inc).unwrap();
    validate_xmod(&a3, &g, &inc, &action).unwrap()
}

/// The non-split butterfly [1 → Z2] → [Z2 → 1] with center Z4:
/// ι is multiplication by 2, π is reduction mod 2, κ and ȷ are trivial.
pub fn z4_butterfly() -> crate::butterfly::Butterfly {
    let h = xm_disc_z2();
    let g = xm_bz2();
    let e = z(4);
    crate::butterfly::validate_butterfly(
        &h,
        &g,
        &e,
        &GroupHom::zero(&h.g1, &e),
        &validate_hom(&g.g1, &e, &[0, 2]).unwrap(),
        &validate_hom(&e, &h.g0, &[0, 1, 0, 1]).unwrap(),
        &GroupHom::zero(&e, &g.g0),
    )
    .unwrap()
}

/// The split companion of [`z4_butterfly`]: same wings, center V4.
pub fn v4_butterfly() -> crate::butterfly::Butterfly {
    let h = xm_disc_z2();
    let g = xm_bz2();
    let e = v4();
    crate::butterfly::validate_butterfly(
        &h,
        &g,
        &e,
        &GroupHom::zero(&h.g1, &e),
        &validate_hom(&g.g1, &e, &[0, 2]).unwrap(),
        &validate_hom(&e, &h.g0, &[0, 1, 0, 1]).unwrap(),
        &GroupHom::zero(&e, &g.g0),
    )
    .unwrap()
}

/// Named fixture crossed modules, in a fixed order.
pub fn all_xmods() -> Vec<(&'static str, CrossedModule)> {
    vec![
        ("disc-z2", xm_disc_z2()),
        ("bz2", xm_bz2()),
        ("z2-z2-zero", xm_z2_z2_zero()),
        ("z2-z4", xm_z2_z4()),
        ("z4-z2", xm_z4_z2()),
        ("a3-s3", xm_a3_s3()),
    ]
}
