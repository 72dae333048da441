//! Crossed modules, strict morphisms, homotopies, homotopy groups, and the
//! strict gr-groupoid realization.
//!
//! A crossed module is a homomorphism ∂: G1 → G0 together with a right
//! G0-action on G1 subject to
//!
//!   equivariance:  ∂(g^x) = x⁻¹·∂(g)·x
//!   Peiffer:       g0^{∂g1} = g1⁻¹·g0·g1
//!
//! Its realization is a strict monoidal groupoid with objects G0, arrows
//! (x, g): x → x·∂g, and tensor (x0,g0)⊗(x1,g1) = (x0·x1, g0^{x1}·g1).

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{
    direct_product, normal_subgroup, quotient, subgroup_from_members, validate_hom, FiniteGroup,
    GroupHom, RightAction,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    pub g1: FiniteGroup,
    pub g0: FiniteGroup,
    pub delta: GroupHom,
    pub action: RightAction,
}

pub fn validate_xmod(
    g1: &FiniteGroup,
    g0: &FiniteGroup,
    delta: &GroupHom,
    action: &RightAction,
) -> Result<CrossedModule> {
    if delta.source != *g1 || delta.target != *g0 {
        return Err(Error::ShapeMismatch("∂ must map G1 to G0"));
    }
    if action.actor != *g0 || action.space != *g1 {
        return Err(Error::ShapeMismatch("action must be of G0 on G1"));
    }
    for g in g1.elements() {
        for x in g0.elements() {
            if delta.apply(action.act(g, x)) != g0.conj(delta.apply(g), x) {
                return Err(Error::Equivariance(g, x));
            }
        }
    }
    for a in g1.elements() {
        for b in g1.elements() {
            if action.act(a, delta.apply(b)) != g1.conj(a, b) {
                return Err(Error::Peiffer(a, b));
            }
        }
    }
    Ok(CrossedModule {
        g1: g1.clone(),
        g0: g0.clone(),
        delta: delta.clone(),
        action: action.clone(),
    })
}

impl CrossedModule {
    pub fn d(&self, g: usize) -> usize {
        self.delta.apply(g)
    }

    /// g^x
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action.act(g, x)
    }

    /// [1 → G0]: objects only.
    pub fn discrete(g0: &FiniteGroup) -> CrossedModule {
        let one = FiniteGroup::trivial();
        CrossedModule {
            g1: one.clone(),
            g0: g0.clone(),
            delta: GroupHom::zero(&one, g0),
            action: RightAction::trivial(g0, &one),
        }
    }

    /// [G1 → 1]: one object with arrow group G1 (must be abelian for the
    /// Peiffer identity).
    pub fn one_object(g1: &FiniteGroup) -> Result<CrossedModule> {
        let one = FiniteGroup::trivial();
        validate_xmod(
            g1,
            &one,
            &GroupHom::zero(g1, &one),
            &RightAction::trivial(&one, g1),
        )
    }

    /// π0 = G0 / im ∂ with its projection. im ∂ is normal by equivariance.
    pub fn pi0(&self) -> (FiniteGroup, GroupHom) {
        let im = normal_subgroup(&self.g0, &self.delta.image_members())
            .expect("im ∂ is normal by equivariance");
        quotient(&self.g0, &im)
    }

    /// π1 = ker ∂ with its inclusion; abelian and central in G1 by Peiffer.
    pub fn pi1(&self) -> (FiniteGroup, GroupHom) {
        let members = self.delta.kernel_members();
        let (k, inc) = subgroup_from_members(&self.g1, &members).expect("kernel is a subgroup");
        assert!(k.is_abelian(), "π1 must be abelian");
        for &a in &inc.map {
            for b in self.g1.elements() {
                assert_eq!(self.g1.mul(a, b), self.g1.mul(b, a), "π1 must be central in G1");
            }
        }
        (k, inc)
    }

    pub fn realize(&self) -> GrGroupoid {
        GrGroupoid { xm: self.clone() }
    }
}

/// Componentwise product of crossed modules.
pub fn product_xmod(a: &CrossedModule, b: &CrossedModule) -> CrossedModule {
    let g1 = direct_product(&a.g1, &b.g1);
    let g0 = direct_product(&a.g0, &b.g0);
    let bo1 = b.g1.order();
    let bo0 = b.g0.order();
    let map: Vec<usize> = (0..g1.order())
        .map(|k| {
            let (i, j) = crate::group::unpair_index(k, bo1);
            crate::group::pair_index(a.d(i), b.d(j), bo0)
        })
        .collect();
    let delta = validate_hom(&g1, &g0, &map).expect("componentwise ∂");
    let act: Vec<Vec<usize>> = (0..g1.order())
        .map(|k| {
            let (i, j) = crate::group::unpair_index(k, bo1);
            (0..g0.order())
                .map(|x| {
                    let (xa, xb) = crate::group::unpair_index(x, bo0);
                    crate::group::pair_index(a.act(i, xa), b.act(j, xb), bo1)
                })
                .collect()
        })
        .collect();
    let action = crate::group::validate_action(&g0, &g1, &act).expect("componentwise action");
    validate_xmod(&g1, &g0, &delta, &action).expect("product of crossed modules")
}

/// Arrows are pairs (x, g) with source x and target x·∂g.
pub type Arrow = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrGroupoid {
    pub xm: CrossedModule,
}

impl GrGroupoid {
    pub fn source(&self, (x, _): Arrow) -> usize {
        x
    }

    pub fn target(&self, (x, g): Arrow) -> usize {
        self.xm.g0.mul(x, self.xm.d(g))
    }

    pub fn id_arrow(&self, x: usize) -> Arrow {
        (x, self.xm.g1.id())
    }

    /// Composition of (x,g): x → x∂g with (x∂g, g'): x∂g → x∂g∂g'.
    pub fn compose(&self, a: Arrow, b: Arrow) -> Arrow {
        debug_assert_eq!(self.target(a), self.source(b));
        (a.0, self.xm.g1.mul(a.1, b.1))
    }

    pub fn inverse(&self, (x, g): Arrow) -> Arrow {
        (self.target((x, g)), self.xm.g1.inv(g))
    }

    pub fn tensor(&self, a: Arrow, b: Arrow) -> Arrow {
        (
            self.xm.g0.mul(a.0, b.0),
            self.xm.g1.mul(self.xm.act(a.1, b.0), b.1),
        )
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        let g0 = self.xm.g0.order();
        let g1 = self.xm.g1.order();
        (0..g0).flat_map(move |x| (0..g1).map(move |g| (x, g)))
    }

    /// Full-scan verification: tensor is a strictly associative, strictly
    /// unital functor (interchange law) and composition is groupoidal.
    pub fn verify(&self) -> Result<()> {
        let unit = self.id_arrow(self.xm.g0.id());
        for a in self.arrows() {
            if self.tensor(a, unit) != a || self.tensor(unit, a) != a {
                return Err(Error::Mismatch("tensor unit".into()));
            }
            let ia = self.inverse(a);
            if self.compose(a, ia) != self.id_arrow(a.0) {
                return Err(Error::Mismatch("arrow inverse".into()));
            }
            for b in self.arrows() {
                for c in self.arrows() {
                    if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)) {
                        return Err(Error::Mismatch("tensor associativity".into()));
                    }
                }
            }
        }
        // interchange: (a1;a2) ⊗ (b1;b2) = (a1⊗b1) ; (a2⊗b2)
        for x in self.xm.g0.elements() {
            for g in self.xm.g1.elements() {
                for g2 in self.xm.g1.elements() {
                    let a1 = (x, g);
                    let a2 = (self.target(a1), g2);
                    for y in self.xm.g0.elements() {
                        for h in self.xm.g1.elements() {
                            for h2 in self.xm.g1.elements() {
                                let b1 = (y, h);
                                let b2 = (self.target(b1), h2);
                                let lhs =
                                    self.tensor(self.compose(a1, a2), self.compose(b1, b2));
                                let rhs =
                                    self.compose(self.tensor(a1, b1), self.tensor(a2, b2));
                                if lhs != rhs {
                                    return Err(Error::Mismatch("interchange".into()));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictMorphism {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub f1: GroupHom,
    pub f0: GroupHom,
}

pub fn validate_strict(
    source: &CrossedModule,
    target: &CrossedModule,
    f1: &GroupHom,
    f0: &GroupHom,
) -> Result<StrictMorphism> {
    if f1.source != source.g1 || f1.target != target.g1 || f0.source != source.g0
        || f0.target != target.g0
    {
        return Err(Error::ShapeMismatch("strict morphism components"));
    }
    for h in source.g1.elements() {
        if target.d(f1.apply(h)) != f0.apply(source.d(h)) {
            return Err(Error::SquareFails(h));
        }
        for x in source.g0.elements() {
            if f1.apply(source.act(h, x)) != target.act(f1.apply(h), f0.apply(x)) {
                return Err(Error::StrictEquivariance(h, x));
            }
        }
    }
    Ok(StrictMorphism {
        source: source.clone(),
        target: target.clone(),
        f1: f1.clone(),
        f0: f0.clone(),
    })
}

impl StrictMorphism {
    pub fn identity(xm: &CrossedModule) -> StrictMorphism {
        StrictMorphism {
            source: xm.clone(),
            target: xm.clone(),
            f1: GroupHom::identity(&xm.g1),
            f0: GroupHom::identity(&xm.g0),
        }
    }

    pub fn zero(source: &CrossedModule, target: &CrossedModule) -> StrictMorphism {
        StrictMorphism {
            source: source.clone(),
            target: target.clone(),
            f1: GroupHom::zero(&source.g1, &target.g1),
            f0: GroupHom::zero(&source.g0, &target.g0),
        }
    }

    /// Diagrammatic composition.
    pub fn then(&self, next: &StrictMorphism) -> StrictMorphism {
        debug_assert_eq!(self.target, next.source);
        StrictMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f1: self.f1.then(&next.f1),
            f0: self.f0.then(&next.f0),
        }
    }

    /// Induced map π0(source) → π0(target).
    pub fn induced_pi0(&self) -> GroupHom {
        let (p, proj) = self.source.pi0();
        let (q, projt) = self.target.pi0();
        let mut map = vec![usize::MAX; p.order()];
        for x in self.source.g0.elements() {
            let c = proj.apply(x);
            let v = projt.apply(self.f0.apply(x));
            if map[c] == usize::MAX {
                map[c] = v;
            } else {
                assert_eq!(map[c], v, "π0 map must be class-independent");
            }
        }
        validate_hom(&p, &q, &map).expect("induced π0 map")
    }

    /// Induced map π1(source) → π1(target).
    pub fn induced_pi1(&self) -> GroupHom {
        let (p, inc) = self.source.pi1();
        let (q, inct) = self.target.pi1();
        let map: Vec<usize> = (0..p.order())
            .map(|k| {
                let v = self.f1.apply(inc.apply(k));
                inct.preimage(v).expect("f1 preserves ker ∂")
            })
            .collect();
        validate_hom(&p, &q, &map).expect("induced π1 map")
    }

    /// Quasi-isomorphism: both induced maps are bijective.
    pub fn is_quasi_iso(&self) -> bool {
        self.induced_pi0().is_bijective() && self.induced_pi1().is_bijective()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    pub from: StrictMorphism,
    pub to: StrictMorphism,
    pub gamma: Vec<usize>, // H0 → G1
}

pub fn validate_homotopy(
    from: &StrictMorphism,
    to: &StrictMorphism,
    gamma: &[usize],
) -> Result<Homotopy> {
    if from.source != to.source || from.target != to.target {
        return Err(Error::ShapeMismatch("homotopy endpoints"));
    }
    let h = &from.source;
    let g = &from.target;
    if gamma.len() != h.g0.order() {
        return Err(Error::BadShape { got: gamma.len(), want: h.g0.order() });
    }
    for x in h.g0.elements() {
        if g.g0.mul(from.f0.apply(x), g.d(gamma[x])) != to.f0.apply(x) {
            return Err(Error::HomotopyFails(x, 0, "f0·∂γ = f'0"));
        }
        for hh in h.g1.elements() {
            let y = h.g0.mul(x, h.d(hh));
            let lhs = g.g1.mul(gamma[x], to.f1.apply(hh));
            let rhs = g.g1.mul(from.f1.apply(hh), gamma[y]);
            if lhs != rhs {
                return Err(Error::HomotopyFails(x, hh, "γ·f'1 = f1·γ"));
            }
        }
        for x2 in h.g0.elements() {
            let lhs = gamma[h.g0.mul(x, x2)];
            let rhs = g.g1.mul(g.act(gamma[x], from.f0.apply(x2)), gamma[x2]);
            if lhs != rhs {
                return Err(Error::HomotopyFails(x, x2, "γ is a crossed homomorphism"));
            }
        }
    }
    Ok(Homotopy { from: from.clone(), to: to.clone(), gamma: gamma.to_vec() })
}

/// Exhaustive search for a homotopy witness from `from` to `to`. Candidates
/// for γ(x) are confined to the coset forced by f0·∂γ = f'0.
pub fn find_homotopy(
    from: &StrictMorphism,
    to: &StrictMorphism,
    budget: &Budget,
) -> Result<Option<Homotopy>> {
    if from.source != to.source || from.target != to.target {
        return Err(Error::ShapeMismatch("homotopy endpoints"));
    }
    let h = &from.source;
    let g = &from.target;
    let candidates: Vec<Vec<usize>> = h
        .g0
        .elements()
        .map(|x| {
            g.g1.elements()
                .filter(|&c| g.g0.mul(from.f0.apply(x), g.d(c)) == to.f0.apply(x))
                .collect()
        })
        .collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    budget.admit(total)?;
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let n = candidates.len();
    let mut idx = vec![0usize; n];
    loop {
        let gamma: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Ok(w) = validate_homotopy(from, to, &gamma) {
            return Ok(Some(w));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn fixture_xmods_validate() {
        let xs = samples::all_xmods();
        assert!(xs.len() >= 6);
        for (name, xm) in &xs {
            xm.realize().verify().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn bad_xmod_diagnosed() {
        // Z3 ⊂ S3 with the trivial action: equivariance fails at a transposition
        let s3 = samples::s3();
        let z3 = FiniteGroup::cyclic(3);
        let emb = crate::group::enumerate_homs(&z3, &s3, &Budget::default())
            .unwrap()
            .into_iter()
            .find(|h| h.is_injective())
            .unwrap();
        let e = validate_xmod(&z3, &s3, &emb, &RightAction::trivial(&s3, &z3));
        assert!(matches!(e, Err(Error::Equivariance(_, _))));
    }

    #[test]
    fn homotopy_groups() {
        let a3s3 = samples::xm_a3_s3();
        assert_eq!(a3s3.pi0().0.order(), 2);
        assert_eq!(a3s3.pi1().0.order(), 1);
        let zz = samples::xm_z2_z2_zero();
        assert_eq!(zz.pi0().0.order(), 2);
        assert_eq!(zz.pi1().0.order(), 2);
    }

    #[test]
    fn pi1_carries_pi0_action() {
        for (_, xm) in samples::all_xmods() {
            let (_, inc) = xm.pi1();
            let im = xm.delta.image_members();
            for &k in &inc.map {
                for x in xm.g0.elements() {
                    for &m in &im {
                        let x2 = xm.g0.mul(x, m);
                        assert_eq!(xm.act(k, x), xm.act(k, x2));
                    }
                }
            }
        }
    }

    #[test]
    fn homotopy_search() {
        let zz = samples::xm_z2_z2_zero();
        let id = StrictMorphism::identity(&zz);
        let zero = StrictMorphism::zero(&zz, &zz);
        let b = Budget::default();
        // reflexivity via γ ≡ 1
        let refl = find_homotopy(&id, &id, &b).unwrap().unwrap();
        assert!(refl.gamma.iter().all(|&g| g == 0));
        // ∂ = 0 forces f'0 = f0, so id ≁ zero
        assert!(find_homotopy(&zero, &id, &b).unwrap().is_none());
        // symmetry on a nontrivial pair
        let f1 = validate_hom(&zz.g1, &zz.g1, &[0, 1]).unwrap();
        let f0 = GroupHom::identity(&zz.g0);
        let f = validate_strict(&zz, &zz, &f1, &f0).unwrap();
        if let Some(_) = find_homotopy(&id, &f, &b).unwrap() {
            assert!(find_homotopy(&f, &id, &b).unwrap().is_some());
        }
    }

    #[test]
    fn products() {
        let a = samples::xm_disc_z2();
        let p = product_xmod(&a, &a);
        assert_eq!(p.g0.order(), 4);
        assert_eq!(p.g1.order(), 1);
        assert_eq!(
            p.pi0().0.order(),
            a.pi0().0.order() * a.pi0().0.order()
        );
        let b = samples::xm_bz2();
        let q = product_xmod(&b, &b);
        assert_eq!(q.g1.order(), 4);
        q.realize().verify().unwrap();
    }
}
