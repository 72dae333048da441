//! Additive functors between the realized gr-groupoids of two crossed
//! modules, monoidal natural transformations, and the dictionary between
//! butterflies and additive functors (Φ and Ψ) with its round trips.

use crate::budget::Budget;
use crate::butterfly::{validate_butterfly, Butterfly};
use crate::error::{Error, Result};
use crate::group::{pair_index, unpair_index, validate_hom, FiniteGroup, GroupHom};
use crate::xmod::CrossedModule;

/// An additive functor F: H• → G•. The object map f0 is an arbitrary
/// function; f1(x, h) is the component of the image of the arrow (x, h);
/// λ(x, y) is the monoidal structure comparing F(x)F(y) with F(xy).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveFunctor {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub f0: Vec<usize>,
    pub f1: Vec<Vec<usize>>,     // indexed [x][h]
    pub lambda: Vec<Vec<usize>>, // indexed [x][y]
}

impl AdditiveFunctor {
    pub fn f0(&self, x: usize) -> usize {
        self.f0[x]
    }
    pub fn f1(&self, x: usize, h: usize) -> usize {
        self.f1[x][h]
    }
    pub fn lam(&self, x: usize, y: usize) -> usize {
        self.lambda[x][y]
    }
}

pub fn validate_functor(
    source: &CrossedModule,
    target: &CrossedModule,
    f0: &[usize],
    f1: &[Vec<usize>],
    lambda: &[Vec<usize>],
) -> Result<AdditiveFunctor> {
    let n0 = source.g0.order();
    let n1 = source.g1.order();
    let shape_ok = f0.len() == n0
        && f0.iter().all(|&v| v < target.g0.order())
        && f1.len() == n0
        && f1.iter().all(|r| r.len() == n1 && r.iter().all(|&v| v < target.g1.order()))
        && lambda.len() == n0
        && lambda.iter().all(|r| r.len() == n0 && r.iter().all(|&v| v < target.g1.order()));
    if !shape_ok {
        return Err(Error::BadShape { got: f0.len(), want: n0 });
    }
    let f = AdditiveFunctor {
        source: source.clone(),
        target: target.clone(),
        f0: f0.to_vec(),
        f1: f1.iter().cloned().collect(),
        lambda: lambda.iter().cloned().collect(),
    };
    let (h, g) = (&f.source, &f.target);
    for x in h.g0.elements() {
        if f.f1(x, h.g1.id()) != g.g1.id() {
            return Err(Error::FunctorFails(vec![x], "identity arrows"));
        }
        for hh in h.g1.elements() {
            if f.f0(h.g0.mul(x, h.d(hh))) != g.g0.mul(f.f0(x), g.d(f.f1(x, hh))) {
                return Err(Error::FunctorFails(vec![x, hh], "arrows land correctly"));
            }
            for hh2 in h.g1.elements() {
                let lhs = f.f1(x, h.g1.mul(hh, hh2));
                let rhs = g.g1.mul(f.f1(x, hh), f.f1(h.g0.mul(x, h.d(hh)), hh2));
                if lhs != rhs {
                    return Err(Error::FunctorFails(vec![x, hh, hh2], "functoriality"));
                }
            }
        }
    }
    for x in h.g0.elements() {
        for y in h.g0.elements() {
            if f.f0(h.g0.mul(x, y))
                != g.g0.mul(g.g0.mul(f.f0(x), f.f0(y)), g.d(f.lam(x, y)))
            {
                return Err(Error::FunctorFails(vec![x, y], "λ target"));
            }
        }
    }
    for x in h.g0.elements() {
        for y in h.g0.elements() {
            for hh in h.g1.elements() {
                for k in h.g1.elements() {
                    let lhs = g.g1.mul(
                        f.lam(x, y),
                        f.f1(h.g0.mul(x, y), h.g1.mul(h.act(hh, y), k)),
                    );
                    let rhs = g.g1.mul(
                        g.g1.mul(g.act(f.f1(x, hh), f.f0(y)), f.f1(y, k)),
                        f.lam(h.g0.mul(x, h.d(hh)), h.g0.mul(y, h.d(k))),
                    );
                    if lhs != rhs {
                        return Err(Error::FunctorFails(vec![x, y, hh, k], "λ naturality"));
                    }
                }
            }
        }
    }
    for x in h.g0.elements() {
        for y in h.g0.elements() {
            for z in h.g0.elements() {
                let lhs = g.g1.mul(g.act(f.lam(x, y), f.f0(z)), f.lam(h.g0.mul(x, y), z));
                let rhs = g.g1.mul(f.lam(y, z), f.lam(x, h.g0.mul(y, z)));
                if lhs != rhs {
                    return Err(Error::FunctorFails(vec![x, y, z], "associativity coherence"));
                }
            }
        }
    }
    Ok(f)
}

pub fn identity_functor(xm: &CrossedModule) -> AdditiveFunctor {
    let n0 = xm.g0.order();
    validate_functor(
        xm,
        xm,
        &xm.g0.elements().collect::<Vec<_>>(),
        &(0..n0).map(|_| xm.g1.elements().collect()).collect::<Vec<Vec<usize>>>(),
        &vec![vec![xm.g1.id(); n0]; n0],
    )
    .expect("identity functor")
}

/// The strict functor of a strict morphism: f1 independent of the base
/// object, λ ≡ 1.
pub fn functor_from_strict(m: &crate::xmod::StrictMorphism) -> AdditiveFunctor {
    let n0 = m.source.g0.order();
    validate_functor(
        &m.source,
        &m.target,
        &m.f0.map,
        &vec![m.f1.map.clone(); n0],
        &vec![vec![m.target.g1.id(); n0]; n0],
    )
    .expect("strict functor")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalNatTransf {
    pub from: AdditiveFunctor,
    pub to: AdditiveFunctor,
    pub theta: Vec<usize>, // H0 → G1
}

pub fn validate_transformation(
    from: &AdditiveFunctor,
    to: &AdditiveFunctor,
    theta: &[usize],
) -> Result<MonoidalNatTransf> {
    if from.source != to.source || from.target != to.target {
        return Err(Error::ShapeMismatch("transformation endpoints"));
    }
    let h = &from.source;
    let g = &from.target;
    if theta.len() != h.g0.order() || theta.iter().any(|&v| v >= g.g1.order()) {
        return Err(Error::BadShape { got: theta.len(), want: h.g0.order() });
    }
    for x in h.g0.elements() {
        if to.f0(x) != g.g0.mul(from.f0(x), g.d(theta[x])) {
            return Err(Error::TransformationFails(vec![x], "component arrows"));
        }
        for hh in h.g1.elements() {
            let lhs = g.g1.mul(theta[x], to.f1(x, hh));
            let rhs = g.g1.mul(from.f1(x, hh), theta[h.g0.mul(x, h.d(hh))]);
            if lhs != rhs {
                return Err(Error::TransformationFails(vec![x, hh], "naturality"));
            }
        }
        for y in h.g0.elements() {
            let lhs = g.g1.mul(from.lam(x, y), theta[h.g0.mul(x, y)]);
            let rhs = g.g1.mul(
                g.g1.mul(g.act(theta[x], from.f0(y)), theta[y]),
                to.lam(x, y),
            );
            if lhs != rhs {
                return Err(Error::TransformationFails(vec![x, y], "monoidal compatibility"));
            }
        }
    }
    Ok(MonoidalNatTransf { from: from.clone(), to: to.clone(), theta: theta.to_vec() })
}

/// Exhaustive search for a monoidal transformation `from ⇒ to`. Per object x
/// the component θ(x) is constrained to the ∂-coset of f0(x)⁻¹f'0(x);
/// returns the lexicographically least witness.
pub fn find_transformation(
    from: &AdditiveFunctor,
    to: &AdditiveFunctor,
    budget: &Budget,
) -> Result<Option<MonoidalNatTransf>> {
    if from.source != to.source || from.target != to.target {
        return Err(Error::ShapeMismatch("transformation endpoints"));
    }
    let h = &from.source;
    let g = &from.target;
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for x in h.g0.elements() {
        let diff = g.g0.mul(g.g0.inv(from.f0(x)), to.f0(x));
        let c: Vec<usize> = g.g1.elements().filter(|&t| g.d(t) == diff).collect();
        if c.is_empty() {
            return Ok(None);
        }
        candidates.push(c);
    }
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    budget.admit(total)?;
    let mut idx = vec![0usize; candidates.len()];
    loop {
        let theta: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Ok(t) = validate_transformation(from, to, &theta) {
            return Ok(Some(t));
        }
        let mut k = candidates.len();
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

/// Composition of additive functors, in diagram order: `first` then
/// `second`. Strictly associative.
pub fn compose_functors(first: &AdditiveFunctor, second: &AdditiveFunctor) -> AdditiveFunctor {
    assert_eq!(first.target, second.source, "functors not composable");
    let h = &first.source;
    let k = &second.target;
    let f0: Vec<usize> = h.g0.elements().map(|x| second.f0(first.f0(x))).collect();
    let f1: Vec<Vec<usize>> = h
        .g0
        .elements()
        .map(|x| {
            h.g1.elements().map(|hh| second.f1(first.f0(x), first.f1(x, hh))).collect()
        })
        .collect();
    let lambda: Vec<Vec<usize>> = h
        .g0
        .elements()
        .map(|x| {
            h.g0.elements()
                .map(|y| {
                    let gx = first.f0(x);
                    let gy = first.f0(y);
                    k.g1.mul(
                        second.lam(gx, gy),
                        second.f1(second.source.g0.mul(gx, gy), first.lam(x, y)),
                    )
                })
                .collect()
        })
        .collect();
    validate_functor(h, &second.target, &f0, &f1, &lambda).expect("composite functor")
}

/// The canonical set-section of π: the identity over the identity, the
/// least element of each other fiber.
pub fn canonical_section(b: &Butterfly) -> Vec<usize> {
    b.h.g0
        .elements()
        .map(|y| {
            if y == b.h.g0.id() {
                b.e.id()
            } else {
                b.e.elements().find(|&e| b.pi.apply(e) == y).expect("π onto")
            }
        })
        .collect()
}

/// Φ: the additive functor of a butterfly along a set-section σ of π with
/// σ(1) = 1: f0 = ȷ∘σ, f1(x, h) = ι⁻¹(κ(h)⁻¹·σ(x)⁻¹·σ(x∂h)),
/// λ(x, y) = ι⁻¹(σ(y)⁻¹·σ(x)⁻¹·σ(xy)). Both ι-preimages exist because the
/// arguments vanish under π.
pub fn phi(b: &Butterfly, sigma: &[usize]) -> Result<AdditiveFunctor> {
    let h0 = &b.h.g0;
    let section_ok = sigma.len() == h0.order()
        && sigma.iter().all(|&e| e < b.e.order())
        && h0.elements().all(|y| b.pi.apply(sigma[y]) == y)
        && sigma[h0.id()] == b.e.id();
    if !section_ok {
        return Err(Error::SectionInvalid);
    }
    let e = &b.e;
    let lift = |v: usize| -> usize {
        b.iota.preimage(v).expect("π-vanishing element lies in im ι")
    };
    let f0: Vec<usize> = h0.elements().map(|x| b.j.apply(sigma[x])).collect();
    let f1: Vec<Vec<usize>> = h0
        .elements()
        .map(|x| {
            b.h.g1
                .elements()
                .map(|hh| {
                    let v = e.mul(
                        e.mul(e.inv(b.kappa.apply(hh)), e.inv(sigma[x])),
                        sigma[h0.mul(x, b.h.d(hh))],
                    );
                    lift(v)
                })
                .collect()
        })
        .collect();
    let lambda: Vec<Vec<usize>> = h0
        .elements()
        .map(|x| {
            h0.elements()
                .map(|y| {
                    let v = e.mul(
                        e.mul(e.inv(sigma[y]), e.inv(sigma[x])),
                        sigma[h0.mul(x, y)],
                    );
                    lift(v)
                })
                .collect()
        })
        .collect();
    validate_functor(&b.h, &b.g, &f0, &f1, &lambda)
}

/// Ψ: the butterfly of an additive functor. The center is the set H0×G1
/// with (y0, g0)(y1, g1) = (y0·y1, λ(y0,y1)⁻¹·g0^{f0(y1)}·g1); the identity
/// is (1, λ(1,1)), ι(g) = (1, λ(1,1)·g), κ(h) = (∂h, f1(∂h, h⁻¹)·λ(1,1)),
/// π = pr1, ȷ(y, g) = f0(y)·∂g. Everything is validated by full scan.
pub fn psi(f: &AdditiveFunctor) -> Result<Butterfly> {
    let h = &f.source;
    let g = &f.target;
    let n1 = g.g1.order();
    let order = h.g0.order() * n1;
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|a| {
            let (y0, g0) = unpair_index(a, n1);
            (0..order)
                .map(|b| {
                    let (y1, g1) = unpair_index(b, n1);
                    let m = g.g1.mul(
                        g.g1.mul(g.g1.inv(f.lam(y0, y1)), g.act(g0, f.f0(y1))),
                        g1,
                    );
                    pair_index(h.g0.mul(y0, y1), m, n1)
                })
                .collect()
        })
        .collect();
    let e = FiniteGroup::from_table(&rows, None)?;
    let unit_fix = f.lam(h.g0.id(), h.g0.id());
    let kappa_map: Vec<usize> = h
        .g1
        .elements()
        .map(|hh| {
            pair_index(
                h.d(hh),
                g.g1.mul(f.f1(h.d(hh), h.g1.inv(hh)), unit_fix),
                n1,
            )
        })
        .collect();
    let iota_map: Vec<usize> =
        g.g1.elements().map(|gg| pair_index(h.g0.id(), g.g1.mul(unit_fix, gg), n1)).collect();
    let pi_map: Vec<usize> = (0..order).map(|a| unpair_index(a, n1).0).collect();
    let j_map: Vec<usize> = (0..order)
        .map(|a| {
            let (y, gg) = unpair_index(a, n1);
            g.g0.mul(f.f0(y), g.d(gg))
        })
        .collect();
    validate_butterfly(
        h,
        g,
        &e,
        &validate_hom(&h.g1, &e, &kappa_map)?,
        &validate_hom(&g.g1, &e, &iota_map)?,
        &validate_hom(&e, &h.g0, &pi_map)?,
        &validate_hom(&e, &g.g0, &j_map)?,
    )
}

/// The maps induced on π0 (checked constant on classes) and π1.
pub fn induced_pi0(f: &AdditiveFunctor) -> GroupHom {
    let (p0h, projh) = f.source.pi0();
    let (p0g, projg) = f.target.pi0();
    let mut map = vec![usize::MAX; p0h.order()];
    for x in f.source.g0.elements() {
        let cls = projh.apply(x);
        let v = projg.apply(f.f0(x));
        assert!(map[cls] == usize::MAX || map[cls] == v, "π0 map constant on classes");
        map[cls] = v;
    }
    validate_hom(&p0h, &p0g, &map).expect("induced π0 map is a homomorphism")
}

pub fn induced_pi1(f: &AdditiveFunctor) -> GroupHom {
    let (p1h, inch) = f.source.pi1();
    let (p1g, incg) = f.target.pi1();
    let map: Vec<usize> = (0..p1h.order())
        .map(|k| {
            let hh = inch.apply(k);
            let v = f.f1(f.source.g0.id(), hh);
            incg.map.binary_search(&v).expect("π1 image lands in ker ∂")
        })
        .collect();
    validate_hom(&p1h, &p1g, &map).expect("induced π1 map is a homomorphism")
}

/// Equivalence test: essentially surjective and fully faithful on the
/// realized groupoids, cross-checked against bijectivity of the induced
/// π0 and π1 maps.
pub fn is_equivalence(f: &AdditiveFunctor) -> bool {
    let h = &f.source;
    let g = &f.target;
    let ess_surj = g.g0.elements().all(|x2| {
        h.g0.elements().any(|x| {
            g.g1.elements().any(|gg| g.g0.mul(f.f0(x), g.d(gg)) == x2)
        })
    });
    let mut fully_faithful = true;
    'outer: for x in h.g0.elements() {
        for y in h.g0.elements() {
            let dom: Vec<usize> =
                h.g1.elements().filter(|&hh| h.g0.mul(x, h.d(hh)) == y).collect();
            let cod: Vec<usize> = g
                .g1
                .elements()
                .filter(|&gg| g.g0.mul(f.f0(x), g.d(gg)) == f.f0(y))
                .collect();
            let mut image: Vec<usize> = dom.iter().map(|&hh| f.f1(x, hh)).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() != dom.len() || image != cod {
                fully_faithful = false;
                break 'outer;
            }
        }
    }
    let groupoid_level = ess_surj && fully_faithful;
    let homotopy_level = induced_pi0(f).is_bijective() && induced_pi1(f).is_bijective();
    assert_eq!(
        groupoid_level, homotopy_level,
        "equivalence ⟺ π0 and π1 bijective"
    );
    groupoid_level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::{compose, find_butterfly_isomorphism, from_strict, identity_butterfly};
    use crate::samples;
    use crate::xmod::StrictMorphism;

    /// The functor discrete-Z2 → BZ2 classified by the 2-cocycle with
    /// λ(1,1) = c and zero elsewhere.
    fn cocycle_functor(c: usize) -> Result<AdditiveFunctor> {
        let h = samples::xm_disc_z2();
        let g = samples::xm_bz2();
        validate_functor(
            &h,
            &g,
            &[0, 0],
            &[vec![0], vec![0]],
            &[vec![0, 0], vec![0, c]],
        )
    }

    #[test]
    fn validation_examples() {
        for (_, xm) in samples::all_xmods() {
            identity_functor(&xm);
        }
        assert!(cocycle_functor(1).is_ok());
        let h = samples::xm_disc_z2();
        let g = samples::xm_bz2();
        let bad = validate_functor(
            &h,
            &g,
            &[0, 0],
            &[vec![0], vec![0]],
            &[vec![0, 1], vec![0, 1]],
        );
        assert!(matches!(bad, Err(Error::FunctorFails(_, "associativity coherence"))));
    }

    #[test]
    fn phi_examples() {
        for (_, xm) in samples::all_xmods() {
            let b = identity_butterfly(&xm);
            let f = phi(&b, &canonical_section(&b)).unwrap();
            assert_eq!(f, identity_functor(&xm));
        }
        let z4 = samples::z4_butterfly();
        let f = phi(&z4, &[0, 1]).unwrap();
        assert_eq!(f.lam(1, 1), 1);
        assert_eq!(f, cocycle_functor(1).unwrap());
        // a strict morphism through from_strict gives back the strict functor
        let m = StrictMorphism::zero(&samples::xm_z2_z2_zero(), &samples::xm_z2_z4());
        let b = from_strict(&m);
        let f = phi(&b, &canonical_section(&b)).unwrap();
        assert_eq!(f, functor_from_strict(&m));
        assert!(matches!(phi(&z4, &[0, 0]), Err(Error::SectionInvalid)));
    }

    #[test]
    fn psi_examples() {
        let budget = Budget::default();
        let id = identity_functor(&samples::xm_z2_z2_zero());
        let b = psi(&id).unwrap();
        let split = identity_butterfly(&samples::xm_z2_z2_zero());
        assert!(find_butterfly_isomorphism(&b, &split, &budget).unwrap().is_some());
        let b2 = psi(&cocycle_functor(1).unwrap()).unwrap();
        assert!(b2.e.elements().any(|e| b2.e.element_order(e) == 4));
        assert!(find_butterfly_isomorphism(&b2, &samples::z4_butterfly(), &budget)
            .unwrap()
            .is_some());
        // ψ of a strict functor is the split butterfly of the morphism
        let m = StrictMorphism::identity(&samples::xm_z2_z4());
        let b3 = psi(&functor_from_strict(&m)).unwrap();
        assert!(find_butterfly_isomorphism(&b3, &from_strict(&m), &budget)
            .unwrap()
            .is_some());
    }

    #[test]
    fn dictionary_round_trips() {
        let budget = Budget::default();
        for b in [
            samples::z4_butterfly(),
            samples::v4_butterfly(),
            identity_butterfly(&samples::xm_z2_z4()),
            identity_butterfly(&samples::xm_a3_s3()),
        ] {
            let f = phi(&b, &canonical_section(&b)).unwrap();
            let rb = psi(&f).unwrap();
            assert!(find_butterfly_isomorphism(&b, &rb, &budget).unwrap().is_some());
            let f2 = phi(&rb, &canonical_section(&rb)).unwrap();
            assert!(find_transformation(&f, &f2, &budget).unwrap().is_some());
        }
        for f in [
            identity_functor(&samples::xm_a3_s3()),
            cocycle_functor(1).unwrap(),
        ] {
            let b = psi(&f).unwrap();
            let f2 = phi(&b, &canonical_section(&b)).unwrap();
            assert!(find_transformation(&f, &f2, &budget).unwrap().is_some());
        }
    }

    #[test]
    fn section_independence() {
        let budget = Budget::default();
        let b = identity_butterfly(&samples::xm_z2_z4());
        let sections: Vec<Vec<usize>> = {
            // all set-sections with σ(1) = 1
            let fibers: Vec<Vec<usize>> = b
                .h
                .g0
                .elements()
                .map(|y| {
                    if y == b.h.g0.id() {
                        vec![b.e.id()]
                    } else {
                        b.e.elements().filter(|&e| b.pi.apply(e) == y).collect()
                    }
                })
                .collect();
            let mut out = vec![vec![]];
            for f in fibers {
                out = out
                    .into_iter()
                    .flat_map(|p: Vec<usize>| {
                        f.iter().map(move |&v| {
                            let mut q = p.clone();
                            q.push(v);
                            q
                        })
                    })
                    .collect();
            }
            out
        };
        assert!(sections.len() > 1);
        let base = phi(&b, &sections[0]).unwrap();
        for s in &sections[1..] {
            let other = phi(&b, s).unwrap();
            assert!(find_transformation(&base, &other, &budget).unwrap().is_some());
        }
    }

    #[test]
    fn composition_laws() {
        let budget = Budget::default();
        let f = cocycle_functor(1).unwrap();
        let idh = identity_functor(&f.source);
        let idg = identity_functor(&f.target);
        assert_eq!(compose_functors(&idh, &f), f);
        assert_eq!(compose_functors(&f, &idg), f);
        // strict composes to strict
        let m1 = StrictMorphism::zero(&samples::xm_disc_z2(), &samples::xm_z2_z2_zero());
        let m2 = StrictMorphism::zero(&samples::xm_z2_z2_zero(), &samples::xm_bz2());
        assert_eq!(
            compose_functors(&functor_from_strict(&m1), &functor_from_strict(&m2)),
            functor_from_strict(&m1.then(&m2))
        );
        // strict associativity
        let g1 = functor_from_strict(&m1);
        let g2 = functor_from_strict(&m2);
        let g3 = identity_functor(&samples::xm_bz2());
        assert_eq!(
            compose_functors(&compose_functors(&g1, &g2), &g3),
            compose_functors(&g1, &compose_functors(&g2, &g3))
        );
        // Φ respects butterfly composition up to a transformation
        let b1 = samples::z4_butterfly();
        let b2 = identity_butterfly(&b1.g);
        let c = compose(&b1, &b2).unwrap();
        let lhs = phi(&c, &canonical_section(&c)).unwrap();
        let rhs = compose_functors(
            &phi(&b1, &canonical_section(&b1)).unwrap(),
            &phi(&b2, &canonical_section(&b2)).unwrap(),
        );
        assert!(find_transformation(&lhs, &rhs, &budget).unwrap().is_some());
        // π0/π1 functoriality
        assert_eq!(
            induced_pi0(&compose_functors(&g1, &g2)),
            induced_pi0(&g1).then(&induced_pi0(&g2))
        );
        assert_eq!(
            induced_pi1(&compose_functors(&g1, &g2)),
            induced_pi1(&g1).then(&induced_pi1(&g2))
        );
    }

    #[test]
    fn equivalence_detection() {
        for (_, xm) in samples::all_xmods() {
            assert!(is_equivalence(&identity_functor(&xm)));
        }
        let z4 = samples::z4_butterfly();
        assert!(!is_equivalence(&phi(&z4, &canonical_section(&z4)).unwrap()));
        // reversible ⟺ Φ is an equivalence
        for b in [
            samples::z4_butterfly(),
            samples::v4_butterfly(),
            identity_butterfly(&samples::xm_z2_z4()),
            identity_butterfly(&samples::xm_a3_s3()),
        ] {
            let f = phi(&b, &canonical_section(&b)).unwrap();
            assert_eq!(b.is_reversible(), is_equivalence(&f));
        }
    }

    #[test]
    fn transformation_validation() {
        // restricted to strict morphisms with λ = μ = 1 a monoidal
        // transformation is exactly a homotopy
        let xm = samples::xm_z2_z2_zero();
        let idm = StrictMorphism::identity(&xm);
        let f = functor_from_strict(&idm);
        let t = validate_transformation(&f, &f, &[0, 0]).unwrap();
        assert_eq!(t.theta, vec![0, 0]);
        // θ = [0,1] is the nontrivial self-homotopy of the identity here
        assert!(validate_transformation(&f, &f, &[0, 1]).is_ok());
        assert!(validate_transformation(&f, &f, &[1, 0]).is_err());
        let zm = StrictMorphism::zero(&xm, &xm);
        let z = functor_from_strict(&zm);
        let budget = Budget::default();
        // no homotopy between zero and identity on [Z2 →0 Z2]
        assert!(find_transformation(&z, &f, &budget).unwrap().is_none());
        assert!(crate::xmod::find_homotopy(&zm, &idm, &budget).unwrap().is_none());
    }
}
