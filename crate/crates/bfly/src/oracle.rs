//! Independent exhaustive enumerators: group extensions from factor-set
//! data, butterflies up to isomorphism, additive functors up to monoidal
//! natural transformation, strict morphisms up to homotopy, and the
//! count-level cross-checks between them.

use crate::budget::Budget;
use crate::butterfly::{
    find_butterfly_isomorphism, from_strict, validate_butterfly, Butterfly,
};
use crate::error::{Error, Result};
use crate::functor::{
    find_transformation, phi, psi, validate_functor, AdditiveFunctor,
};
use crate::group::{
    automorphism_group, enumerate_homs, pair_index, unpair_index, validate_hom, FiniteGroup,
    GroupHom,
};
use crate::xmod::{find_homotopy, validate_strict, CrossedModule, StrictMorphism};
use std::time::{Duration, Instant};

/// A group extension 1 → N →ι E →π Q → 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub e: FiniteGroup,
    pub inclusion: GroupHom,
    pub projection: GroupHom,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport<T> {
    pub context: String,
    pub raw_count: usize,
    pub class_count: usize,
    pub representatives: Vec<T>,
    pub wall: Duration,
}

fn label(g: &FiniteGroup) -> String {
    g.label.clone().unwrap_or_else(|| format!("order-{}", g.order()))
}

fn xm_label(xm: &CrossedModule) -> String {
    format!("[{} -> {}]", label(&xm.g1), label(&xm.g0))
}

/// Build the extension group of abelian-kernel Schreier data: the action
/// homomorphism φ: Q → Aut(N) and a normalized factor set f. Elements are
/// (x, n) with index x·|N| + n and product
/// (x1, n1)(x2, n2) = (x1x2, n1·φ(x1)(n2)·f(x1,x2)).
fn build_extension(
    q: &FiniteGroup,
    n: &FiniteGroup,
    act: &[GroupHom], // φ(x) as an automorphism of N, indexed by x
    f: &[usize],      // flattened Q×Q factor set
) -> Result<Extension> {
    let nn = n.order();
    let order = q.order() * nn;
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|p| {
            let (x1, n1) = unpair_index(p, nn);
            (0..order)
                .map(|r| {
                    let (x2, n2) = unpair_index(r, nn);
                    pair_index(
                        q.mul(x1, x2),
                        n.mul(n.mul(n1, act[x1].apply(n2)), f[x1 * q.order() + x2]),
                        nn,
                    )
                })
                .collect()
        })
        .collect();
    let e = FiniteGroup::from_table(&rows, None)?;
    let inclusion =
        validate_hom(n, &e, &n.elements().map(|a| pair_index(q.id(), a, nn)).collect::<Vec<_>>())?;
    let projection =
        validate_hom(&e, q, &(0..order).map(|p| unpair_index(p, nn).0).collect::<Vec<_>>())?;
    Ok(Extension { e, inclusion, projection })
}

/// All extensions of Q by an abelian N, one representative per strict
/// equivalence class (θ fixing N and Q): classified by a homomorphism
/// φ: Q → Aut(N) together with a φ-twisted 2-cocycle class.
pub fn enumerate_extensions(
    q: &FiniteGroup,
    n: &FiniteGroup,
    budget: &Budget,
) -> Result<Vec<Extension>> {
    assert!(n.is_abelian(), "kernel must be abelian for factor-set enumeration");
    budget.admit_order(q.order() * n.order())?;
    let (aut, auts) = automorphism_group(n, budget)?;
    let nq = q.order();
    let free: Vec<(usize, usize)> = q
        .elements()
        .flat_map(|x| q.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| x != q.id() && y != q.id())
        .collect();
    let mut out = Vec::new();
    for phi_hom in enumerate_homs(q, &aut, budget)? {
        let act: Vec<GroupHom> = q.elements().map(|x| auts[phi_hom.apply(x)].clone()).collect();
        // all normalized φ-twisted coboundaries δc(x,y) = c(x)·φ(x)(c(y))·c(xy)⁻¹
        let cfree: Vec<usize> = q.elements().filter(|&x| x != q.id()).collect();
        budget.admit((n.order() as u128).saturating_pow(cfree.len() as u32))?;
        let mut cobs: Vec<Vec<usize>> = Vec::new();
        let mut cidx = vec![0usize; cfree.len()];
        loop {
            let mut c = vec![n.id(); nq];
            for (k, &x) in cfree.iter().enumerate() {
                c[x] = cidx[k];
            }
            let d: Vec<usize> = q
                .elements()
                .flat_map(|x| {
                    let (c, act) = (&c, &act);
                    q.elements()
                        .map(move |y| n.mul(n.mul(c[x], act[x].apply(c[y])), n.inv(c[q.mul(x, y)])))
                })
                .collect();
            cobs.push(d);
            let mut k = cfree.len();
            let mut done = false;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                cidx[k] += 1;
                if cidx[k] < n.order() {
                    break;
                }
                cidx[k] = 0;
            }
            if done {
                break;
            }
        }
        cobs.sort_unstable();
        cobs.dedup();
        // scan normalized factor sets satisfying the twisted cocycle condition
        budget.admit((n.order() as u128).saturating_pow(free.len() as u32))?;
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut f = vec![n.id(); nq * nq];
            for (k, &(x, y)) in free.iter().enumerate() {
                f[x * nq + y] = idx[k];
            }
            let cocycle = q.elements().all(|x| {
                q.elements().all(|y| {
                    q.elements().all(|z| {
                        n.mul(act[x].apply(f[y * nq + z]), f[x * nq + q.mul(y, z)])
                            == n.mul(f[x * nq + y], f[q.mul(x, y) * nq + z])
                    })
                })
            });
            if cocycle {
                let rep: Vec<usize> = cobs
                    .iter()
                    .map(|d| f.iter().zip(d).map(|(&a, &b)| n.mul(a, b)).collect::<Vec<usize>>())
                    .min()
                    .expect("zero coboundary present");
                if !reps.contains(&rep) {
                    reps.push(rep);
                }
            }
            let mut k = free.len();
            let mut done = false;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n.order() {
                    break;
                }
                idx[k] = 0;
            }
            if done {
                break;
            }
        }
        reps.sort_unstable();
        for rep in reps {
            out.push(build_extension(q, n, &act, &rep)?);
        }
    }
    Ok(out)
}

/// All butterflies H• → G• up to butterfly isomorphism: per extension
/// class of H0 by G1, every (κ, ȷ) pair passing validation.
pub fn enumerate_butterflies(
    h: &CrossedModule,
    g: &CrossedModule,
    budget: &Budget,
) -> Result<EnumerationReport<Butterfly>> {
    let start = Instant::now();
    let mut raw = 0usize;
    let mut reps: Vec<Butterfly> = Vec::new();
    for ext in enumerate_extensions(&h.g0, &g.g1, budget)? {
        let kappas: Vec<GroupHom> = enumerate_homs(&h.g1, &ext.e, budget)?
            .into_iter()
            .filter(|k| k.then(&ext.projection) == h.delta)
            .collect();
        let js: Vec<GroupHom> = enumerate_homs(&ext.e, &g.g0, budget)?
            .into_iter()
            .filter(|j| ext.inclusion.then(j) == g.delta)
            .collect();
        for k in &kappas {
            for j in &js {
                let b = match validate_butterfly(h, g, &ext.e, k, &ext.inclusion, &ext.projection, j)
                {
                    Ok(b) => b,
                    Err(_) => continue,
                };
                raw += 1;
                let mut fresh = true;
                for r in &reps {
                    if find_butterfly_isomorphism(r, &b, budget)?.is_some() {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    reps.push(b);
                }
            }
        }
    }
    Ok(EnumerationReport {
        context: format!("butterflies {} -> {}", xm_label(h), xm_label(g)),
        raw_count: raw,
        class_count: reps.len(),
        representatives: reps,
        wall: start.elapsed(),
    })
}

/// All additive functors H• → G• up to monoidal natural transformation.
/// f0 ranges over all functions, f1 and λ over the boundary-forced cosets;
/// λ over the identity row and column is determined by λ(1,1).
pub fn enumerate_functors(
    h: &CrossedModule,
    g: &CrossedModule,
    budget: &Budget,
) -> Result<EnumerationReport<AdditiveFunctor>> {
    let start = Instant::now();
    let (n0, n1) = (h.g0.order(), h.g1.order());
    let mut raw = 0usize;
    let mut reps: Vec<AdditiveFunctor> = Vec::new();
    let coset = |target: usize| -> Vec<usize> {
        g.g1.elements().filter(|&t| g.d(t) == target).collect()
    };
    budget.admit((g.g0.order() as u128).saturating_pow(n0 as u32))?;
    let mut f0 = vec![0usize; n0];
    'f0: loop {
        // f1 entries per (x, h ≠ 1), confined to their boundary coset
        let f1_slots: Vec<(usize, usize)> = h
            .g0
            .elements()
            .flat_map(|x| h.g1.elements().map(move |hh| (x, hh)))
            .filter(|&(_, hh)| hh != h.g1.id())
            .collect();
        let f1_cands: Vec<Vec<usize>> = f1_slots
            .iter()
            .map(|&(x, hh)| {
                coset(g.g0.mul(g.g0.inv(f0[x]), f0[h.g0.mul(x, h.d(hh))]))
            })
            .collect();
        // λ entries: (1,1) plus all (x ≠ 1, y ≠ 1); the remaining identity
        // row/column is forced by coherence
        let lam_slots: Vec<(usize, usize)> = std::iter::once((h.g0.id(), h.g0.id()))
            .chain(
                h.g0.elements()
                    .flat_map(|x| h.g0.elements().map(move |y| (x, y)))
                    .filter(|&(x, y)| x != h.g0.id() && y != h.g0.id()),
            )
            .collect();
        let lam_cands: Vec<Vec<usize>> = lam_slots
            .iter()
            .map(|&(x, y)| {
                coset(g.g0.mul(
                    g.g0.inv(g.g0.mul(f0[x], f0[y])),
                    f0[h.g0.mul(x, y)],
                ))
            })
            .collect();
        if f1_cands.iter().all(|c| !c.is_empty()) && lam_cands.iter().all(|c| !c.is_empty()) {
            let inner: u128 = f1_cands
                .iter()
                .chain(&lam_cands)
                .map(|c| c.len() as u128)
                .product();
            budget.admit(inner)?;
            let mut idx = vec![0usize; f1_cands.len() + lam_cands.len()];
            'inner: loop {
                let mut f1 = vec![vec![g.g1.id(); n1]; n0];
                for (k, &(x, hh)) in f1_slots.iter().enumerate() {
                    f1[x][hh] = f1_cands[k][idx[k]];
                }
                let mut lam = vec![vec![usize::MAX; n0]; n0];
                for (k, &(x, y)) in lam_slots.iter().enumerate() {
                    lam[x][y] = lam_cands[k][idx[f1_cands.len() + k]];
                }
                // λ(1,z) = λ(1,1)^{f0(z)}, λ(x,1) = λ(1,1)^{f0(1)⁻¹}
                let l11 = lam[h.g0.id()][h.g0.id()];
                for z in h.g0.elements() {
                    if lam[h.g0.id()][z] == usize::MAX {
                        lam[h.g0.id()][z] = g.act(l11, f0[z]);
                    }
                    if lam[z][h.g0.id()] == usize::MAX {
                        lam[z][h.g0.id()] = g.act(l11, g.g0.inv(f0[h.g0.id()]));
                    }
                }
                if let Ok(f) = validate_functor(h, g, &f0, &f1, &lam) {
                    raw += 1;
                    let mut fresh = true;
                    for r in &reps {
                        if find_transformation(r, &f, budget)?.is_some() {
                            fresh = false;
                            break;
                        }
                    }
                    if fresh {
                        reps.push(f);
                    }
                }
                let mut k = idx.len();
                loop {
                    if k == 0 {
                        break 'inner;
                    }
                    k -= 1;
                    idx[k] += 1;
                    let limit = if k < f1_cands.len() {
                        f1_cands[k].len()
                    } else {
                        lam_cands[k - f1_cands.len()].len()
                    };
                    if idx[k] < limit {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        // advance f0 as a function H0 → G0
        let mut k = n0;
        loop {
            if k == 0 {
                break 'f0;
            }
            k -= 1;
            f0[k] += 1;
            if f0[k] < g.g0.order() {
                break;
            }
            f0[k] = 0;
        }
    }
    Ok(EnumerationReport {
        context: format!("functors {} -> {}", xm_label(h), xm_label(g)),
        raw_count: raw,
        class_count: reps.len(),
        representatives: reps,
        wall: start.elapsed(),
    })
}

/// All strict morphisms H• → G• up to homotopy.
pub fn enumerate_strict(
    h: &CrossedModule,
    g: &CrossedModule,
    budget: &Budget,
) -> Result<EnumerationReport<StrictMorphism>> {
    let start = Instant::now();
    let mut raw = 0usize;
    let mut reps: Vec<StrictMorphism> = Vec::new();
    for f1 in enumerate_homs(&h.g1, &g.g1, budget)? {
        for f0 in enumerate_homs(&h.g0, &g.g0, budget)? {
            let m = match validate_strict(h, g, &f1, &f0) {
                Ok(m) => m,
                Err(_) => continue,
            };
            raw += 1;
            let mut fresh = true;
            for r in &reps {
                if find_homotopy(r, &m, budget)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(m);
            }
        }
    }
    Ok(EnumerationReport {
        context: format!("strict {} -> {}", xm_label(h), xm_label(g)),
        raw_count: raw,
        class_count: reps.len(),
        representatives: reps,
        wall: start.elapsed(),
    })
}

/// Count-level verification of the butterfly/functor dictionary:
/// iso-class counts agree and Φ/Ψ realize a bijection of classes.
#[derive(Debug, Clone)]
pub struct Theorem2Report {
    pub butterflies: EnumerationReport<Butterfly>,
    pub functors: EnumerationReport<AdditiveFunctor>,
    pub bijection_ok: bool,
}

pub fn theorem2_check(
    h: &CrossedModule,
    g: &CrossedModule,
    budget: &Budget,
) -> Result<Theorem2Report> {
    let butterflies = enumerate_butterflies(h, g, budget)?;
    let functors = enumerate_functors(h, g, budget)?;
    if butterflies.class_count != functors.class_count {
        return Err(Error::Mismatch(format!(
            "butterfly classes {} != functor classes {}",
            butterflies.class_count, functors.class_count
        )));
    }
    // Φ maps butterfly classes injectively onto functor classes
    let mut targets = Vec::new();
    for b in &butterflies.representatives {
        let f = phi(b, &crate::functor::canonical_section(b))?;
        let mut hit = None;
        for (i, r) in functors.representatives.iter().enumerate() {
            if find_transformation(r, &f, budget)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) if !targets.contains(&i) => targets.push(i),
            Some(i) => {
                return Err(Error::Mismatch(format!("Φ sends two classes to functor class {i}")))
            }
            None => return Err(Error::Mismatch("Φ image is not an enumerated class".into())),
        }
    }
    // Ψ inverts Φ classwise
    for (b, &i) in butterflies.representatives.iter().zip(&targets) {
        let back = psi(&functors.representatives[i])?;
        if find_butterfly_isomorphism(b, &back, budget)?.is_none() {
            return Err(Error::Mismatch("Ψ∘Φ left a butterfly class".into()));
        }
    }
    let bijection_ok = targets.len() == functors.class_count;
    if !bijection_ok {
        return Err(Error::Mismatch("Φ is not onto the functor classes".into()));
    }
    Ok(Theorem2Report { butterflies, functors, bijection_ok })
}

/// Split butterflies up to isomorphism biject with strict morphisms up to
/// homotopy.
#[derive(Debug, Clone)]
pub struct Prop6Report {
    pub split_classes: usize,
    pub strict_classes: usize,
    pub bijection_ok: bool,
}

pub fn prop6_check(h: &CrossedModule, g: &CrossedModule, budget: &Budget) -> Result<Prop6Report> {
    let butterflies = enumerate_butterflies(h, g, budget)?;
    let mut split = Vec::new();
    for b in butterflies.representatives {
        if b.is_splittable(budget)? {
            split.push(b);
        }
    }
    let strict = enumerate_strict(h, g, budget)?;
    if split.len() != strict.class_count {
        return Err(Error::Mismatch(format!(
            "split butterfly classes {} != strict homotopy classes {}",
            split.len(),
            strict.class_count
        )));
    }
    // from_strict maps strict classes injectively onto split classes
    let mut targets = Vec::new();
    for m in &strict.representatives {
        let b = from_strict(m);
        let mut hit = None;
        for (i, r) in split.iter().enumerate() {
            if find_butterfly_isomorphism(r, &b, budget)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) if !targets.contains(&i) => targets.push(i),
            _ => return Err(Error::Mismatch("from_strict does not biject the classes".into())),
        }
    }
    Ok(Prop6Report {
        split_classes: split.len(),
        strict_classes: strict.class_count,
        bijection_ok: targets.len() == split.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::compose;
    use crate::group::is_isomorphic;
    use crate::samples;

    #[test]
    fn extension_counts() {
        let budget = Budget::default();
        let exts = enumerate_extensions(&samples::z(2), &samples::z(2), &budget).unwrap();
        assert_eq!(exts.len(), 2);
        let orders: Vec<bool> = exts.iter().map(|x| x.e.is_abelian()).collect();
        assert_eq!(orders, vec![true, true]); // V4 and Z4
        assert!(exts
            .iter()
            .any(|x| is_isomorphic(&x.e, &samples::z(4), &budget).unwrap().is_some()));
        assert!(exts
            .iter()
            .any(|x| is_isomorphic(&x.e, &samples::v4(), &budget).unwrap().is_some()));
        let exts23 = enumerate_extensions(&samples::z(2), &samples::z(3), &budget).unwrap();
        assert_eq!(exts23.len(), 2);
        assert!(exts23
            .iter()
            .any(|x| is_isomorphic(&x.e, &samples::s3(), &budget).unwrap().is_some()));
        let trivial = enumerate_extensions(&FiniteGroup::trivial(), &samples::z(4), &budget).unwrap();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].e, samples::z(4));
    }

    #[test]
    fn butterfly_counts() {
        let budget = Budget::default();
        let r = enumerate_butterflies(&samples::xm_disc_z2(), &samples::xm_bz2(), &budget).unwrap();
        assert_eq!(r.class_count, 2);
        let r2 = enumerate_butterflies(&samples::xm_bz2(), &samples::xm_disc_z2(), &budget).unwrap();
        assert_eq!(r2.class_count, 1);
        // identity class is present on a self pair
        let xm = samples::xm_z2_z2_zero();
        let r3 = enumerate_butterflies(&xm, &xm, &budget).unwrap();
        let id = crate::butterfly::identity_butterfly(&xm);
        assert!(r3
            .representatives
            .iter()
            .any(|b| find_butterfly_isomorphism(b, &id, &budget).unwrap().is_some()));
    }

    #[test]
    fn functor_and_strict_counts() {
        let budget = Budget::default();
        let r = enumerate_functors(&samples::xm_disc_z2(), &samples::xm_bz2(), &budget).unwrap();
        assert_eq!(r.class_count, 2);
        let s = enumerate_strict(&samples::xm_disc_z2(), &samples::xm_bz2(), &budget).unwrap();
        assert_eq!(s.class_count, 1);
        let xm = samples::xm_z2_z2_zero();
        let rf = enumerate_functors(&xm, &xm, &budget).unwrap();
        let id = crate::functor::identity_functor(&xm);
        assert!(rf
            .representatives
            .iter()
            .any(|f| find_transformation(f, &id, &budget).unwrap().is_some()));
    }

    #[test]
    fn theorem2_on_fixture_pairs() {
        let budget = Budget::default();
        let r1 = theorem2_check(&samples::xm_disc_z2(), &samples::xm_bz2(), &budget).unwrap();
        assert_eq!(r1.butterflies.class_count, 2);
        assert!(r1.bijection_ok);
        let xm = samples::xm_z2_z2_zero();
        let r2 = theorem2_check(&xm, &xm, &budget).unwrap();
        assert_eq!(r2.butterflies.class_count, 8);
        assert!(r2.bijection_ok);
    }

    #[test]
    fn prop6_on_fixture_pairs() {
        let budget = Budget::default();
        let r1 = prop6_check(&samples::xm_disc_z2(), &samples::xm_bz2(), &budget).unwrap();
        assert_eq!(r1.split_classes, 1);
        assert!(r1.bijection_ok);
        let xm = samples::xm_z2_z2_zero();
        let r2 = prop6_check(&xm, &xm, &budget).unwrap();
        assert_eq!(r2.split_classes, r2.strict_classes);
        assert!(r2.bijection_ok);
    }

    #[test]
    fn composition_closed_on_classes() {
        let budget = Budget::default();
        let xm = samples::xm_z2_z2_zero();
        let r = enumerate_butterflies(&xm, &xm, &budget).unwrap();
        for a in &r.representatives {
            for b in &r.representatives {
                let c = compose(a, b).unwrap();
                let hits = r
                    .representatives
                    .iter()
                    .filter(|rep| find_butterfly_isomorphism(rep, &c, &budget).unwrap().is_some())
                    .count();
                assert_eq!(hits, 1, "composite lies in exactly one enumerated class");
            }
        }
    }
}
