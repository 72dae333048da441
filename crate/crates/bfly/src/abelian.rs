//! The abelian specialization: length-two complexes of finite abelian
//! groups, abelian butterflies with Baer sums, the forgetful fibration to
//! Ext computed by factor sets, and mapping-cone homology comparisons.

use crate::budget::Budget;
use crate::butterfly::{
    butterfly_isomorphisms, find_butterfly_isomorphism, fraction, validate_butterfly, Butterfly,
};
use crate::error::{Error, Result};
use crate::group::{
    direct_product, enumerate_homs, is_isomorphic, normal_subgroup, pair_index, quotient,
    subgroup_from_members, unpair_index, validate_hom, FiniteGroup, GroupHom,
};
use crate::xmod::{validate_strict, CrossedModule, StrictMorphism};

/// A cohomological complex A^{-1} →d A^0 of finite abelian groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianComplex {
    pub a_m1: FiniteGroup,
    pub a_0: FiniteGroup,
    pub d: GroupHom,
}

pub fn validate_complex(a_m1: &FiniteGroup, a_0: &FiniteGroup, d: &GroupHom) -> Result<AbelianComplex> {
    if !a_m1.is_abelian() {
        return Err(Error::WingNotAbelian("degree -1"));
    }
    if !a_0.is_abelian() {
        return Err(Error::WingNotAbelian("degree 0"));
    }
    if d.source != *a_m1 || d.target != *a_0 {
        return Err(Error::ShapeMismatch("complex differential"));
    }
    Ok(AbelianComplex { a_m1: a_m1.clone(), a_0: a_0.clone(), d: d.clone() })
}

impl AbelianComplex {
    /// The crossed module with trivial action underlying the complex.
    pub fn to_xmod(&self) -> CrossedModule {
        crate::xmod::validate_xmod(
            &self.a_m1,
            &self.a_0,
            &self.d,
            &crate::group::RightAction::trivial(&self.a_0, &self.a_m1),
        )
        .expect("abelian complex is a crossed module")
    }

    pub fn from_xmod(xm: &CrossedModule) -> Result<AbelianComplex> {
        validate_complex(&xm.g1, &xm.g0, &xm.delta)
    }
}

/// A butterfly between abelian complexes (no actions): NE-SW short exact,
/// NW-SE a complex, both triangles, commuting wing images. The center need
/// not be abelian a priori; `e_abelian` records whether it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianButterfly {
    pub source: AbelianComplex, // B•
    pub target: AbelianComplex, // A•
    pub e: FiniteGroup,
    pub kappa: GroupHom, // B^{-1} → E
    pub iota: GroupHom,  // A^{-1} → E
    pub pi: GroupHom,    // E → B^0
    pub j: GroupHom,     // E → A^0
    pub e_abelian: bool,
}

pub fn validate_abelian_butterfly(
    source: &AbelianComplex,
    target: &AbelianComplex,
    e: &FiniteGroup,
    kappa: &GroupHom,
    iota: &GroupHom,
    pi: &GroupHom,
    j: &GroupHom,
) -> Result<AbelianButterfly> {
    if kappa.source != source.a_m1
        || iota.source != target.a_m1
        || pi.target != source.a_0
        || j.target != target.a_0
    {
        return Err(Error::ShapeMismatch("butterfly wings"));
    }
    if kappa.target != *e || iota.target != *e || pi.source != *e || j.source != *e {
        return Err(Error::ShapeMismatch("butterfly center"));
    }
    for x in source.a_m1.elements() {
        if pi.apply(kappa.apply(x)) != source.d.apply(x) {
            return Err(Error::TriangleFails { which: "π∘κ = d_B", witness: x });
        }
        if j.apply(kappa.apply(x)) != target.a_0.id() {
            return Err(Error::NotComplex(x));
        }
    }
    for a in target.a_m1.elements() {
        if j.apply(iota.apply(a)) != target.d.apply(a) {
            return Err(Error::TriangleFails { which: "ȷ∘ι = d_A", witness: a });
        }
    }
    if !iota.is_injective() {
        return Err(Error::NotExtension("ι is not injective"));
    }
    if !pi.is_surjective() {
        return Err(Error::NotExtension("π is not surjective"));
    }
    if pi.kernel_members() != iota.image_members() {
        return Err(Error::NotExtension("ker π ≠ im ι"));
    }
    for x in source.a_m1.elements() {
        for a in target.a_m1.elements() {
            let u = kappa.apply(x);
            let v = iota.apply(a);
            if e.mul(u, v) != e.mul(v, u) {
                return Err(Error::ImagesDontCommute(x, a));
            }
        }
    }
    Ok(AbelianButterfly {
        source: source.clone(),
        target: target.clone(),
        e: e.clone(),
        kappa: kappa.clone(),
        iota: iota.clone(),
        pi: pi.clone(),
        j: j.clone(),
        e_abelian: e.is_abelian(),
    })
}

impl AbelianButterfly {
    /// View as a full butterfly (trivial actions). Requires an abelian
    /// center so the conjugation-equivariance axioms degenerate correctly.
    pub fn to_butterfly(&self) -> Result<Butterfly> {
        if !self.e_abelian {
            return Err(Error::ShapeMismatch("center is not abelian"));
        }
        validate_butterfly(
            &self.source.to_xmod(),
            &self.target.to_xmod(),
            &self.e,
            &self.kappa,
            &self.iota,
            &self.pi,
            &self.j,
        )
    }

    pub fn from_butterfly(b: &Butterfly) -> Result<AbelianButterfly> {
        validate_abelian_butterfly(
            &AbelianComplex::from_xmod(&b.h)?,
            &AbelianComplex::from_xmod(&b.g)?,
            &b.e,
            &b.kappa,
            &b.iota,
            &b.pi,
            &b.j,
        )
    }
}

/// The zero butterfly B• → A•: split center B^0 × A^{-1}.
pub fn zero_butterfly(source: &AbelianComplex, target: &AbelianComplex) -> AbelianButterfly {
    let m = validate_strict(
        &source.to_xmod(),
        &target.to_xmod(),
        &GroupHom::zero(&source.a_m1, &target.a_m1),
        &GroupHom::zero(&source.a_0, &target.a_0),
    )
    .expect("zero morphism");
    AbelianButterfly::from_butterfly(&crate::butterfly::from_strict(&m)).expect("zero butterfly")
}

/// Negation: ι and ȷ change sign (the sign on ȷ is forced by the triangle
/// ȷ∘ι = d).
pub fn negate(b: &AbelianButterfly) -> AbelianButterfly {
    let iota = validate_hom(
        &b.target.a_m1,
        &b.e,
        &b.target
            .a_m1
            .elements()
            .map(|a| b.iota.apply(b.target.a_m1.inv(a)))
            .collect::<Vec<_>>(),
    )
    .expect("ι∘(-1)");
    let j = validate_hom(
        &b.e,
        &b.target.a_0,
        &b.j.map.iter().map(|&v| b.target.a_0.inv(v)).collect::<Vec<_>>(),
    )
    .expect("-ȷ");
    validate_abelian_butterfly(&b.source, &b.target, &b.e, &b.kappa, &iota, &b.pi, &j)
        .expect("negated butterfly")
}

/// Baer sum: pull E × E' back over the diagonal of B^0, push out along the
/// sum map by dividing by the antidiagonal {(ι(a), ι'(a)⁻¹)}.
pub fn baer_sum(b: &AbelianButterfly, b2: &AbelianButterfly) -> Result<AbelianButterfly> {
    if b.source != b2.source || b.target != b2.target {
        return Err(Error::ShapeMismatch("Baer sum endpoints"));
    }
    let (e, e2) = (&b.e, &b2.e);
    let d = direct_product(e, e2);
    let members: Vec<usize> = e
        .elements()
        .flat_map(|u| {
            e2.elements()
                .filter(move |&v| b.pi.apply(u) == b2.pi.apply(v))
                .map(move |v| pair_index(u, v, e2.order()))
        })
        .collect();
    let (c, inc) = subgroup_from_members(&d, &members)?;
    let pos = |u: usize, v: usize| {
        inc.map.binary_search(&pair_index(u, v, e2.order())).expect("member of the pullback")
    };
    let n_members: Vec<usize> = b
        .target
        .a_m1
        .elements()
        .map(|a| pos(b.iota.apply(a), e2.inv(b2.iota.apply(a))))
        .collect();
    let n = normal_subgroup(&c, &n_members)?;
    let (q, proj) = quotient(&c, &n);
    let kappa_map: Vec<usize> = b
        .source
        .a_m1
        .elements()
        .map(|x| proj.apply(pos(b.kappa.apply(x), b2.kappa.apply(x))))
        .collect();
    let iota_map: Vec<usize> = b
        .target
        .a_m1
        .elements()
        .map(|a| proj.apply(pos(b.iota.apply(a), e2.id())))
        .collect();
    let mut pi_map = vec![usize::MAX; q.order()];
    let mut j_map = vec![usize::MAX; q.order()];
    for (p, &dm) in inc.map.iter().enumerate() {
        let (u, v) = unpair_index(dm, e2.order());
        let cls = proj.apply(p);
        let pv = b.pi.apply(u);
        let jv = b.target.a_0.mul(b.j.apply(u), b2.j.apply(v));
        assert!(pi_map[cls] == usize::MAX || pi_map[cls] == pv, "π constant on classes");
        assert!(j_map[cls] == usize::MAX || j_map[cls] == jv, "ȷ constant on classes");
        pi_map[cls] = pv;
        j_map[cls] = jv;
    }
    validate_abelian_butterfly(
        &b.source,
        &b.target,
        &q,
        &validate_hom(&b.source.a_m1, &q, &kappa_map)?,
        &validate_hom(&b.target.a_m1, &q, &iota_map)?,
        &validate_hom(&q, &b.source.a_0, &pi_map)?,
        &validate_hom(&q, &b.target.a_0, &j_map)?,
    )
}

pub fn abelian_isomorphic(a: &AbelianButterfly, b: &AbelianButterfly, budget: &Budget) -> Result<bool> {
    Ok(find_butterfly_isomorphism(&a.to_butterfly()?, &b.to_butterfly()?, budget)?.is_some())
}

/// An element of Ext(B^0, A^{-1}): a normalized symmetric 2-cocycle,
/// reduced to the lexicographically least representative mod coboundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionClass {
    pub quotient: FiniteGroup, // B^0
    pub kernel: FiniteGroup,   // A^{-1}
    pub factor_set: Vec<Vec<usize>>,
}

fn flatten(f: &[Vec<usize>]) -> Vec<usize> {
    f.iter().flatten().copied().collect()
}

/// All coboundaries δc(x,y) = c(x) + c(y) - c(x+y) over normalized c,
/// flattened, sorted and deduplicated.
fn coboundaries(b0: &FiniteGroup, am1: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = b0.order();
    let free: Vec<usize> = b0.elements().filter(|&x| x != b0.id()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut c = vec![am1.id(); n];
        for (k, &x) in free.iter().enumerate() {
            c[x] = idx[k];
        }
        let f: Vec<usize> = b0
            .elements()
            .flat_map(|x| {
                let c = &c;
                b0.elements()
                    .map(move |y| am1.mul(am1.mul(c[x], c[y]), am1.inv(c[b0.mul(x, y)])))
            })
            .collect();
        out.push(f);
        let mut k = free.len();
        loop {
            if k == 0 {
                out.sort_unstable();
                out.dedup();
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < am1.order() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn canonical_rep(b0: &FiniteGroup, am1: &FiniteGroup, f: &[usize]) -> Vec<usize> {
    coboundaries(b0, am1)
        .iter()
        .map(|d| f.iter().zip(d).map(|(&a, &b)| am1.mul(a, b)).collect::<Vec<usize>>())
        .min()
        .expect("at least the zero coboundary")
}

fn is_symmetric_cocycle(b0: &FiniteGroup, am1: &FiniteGroup, f: &[Vec<usize>]) -> bool {
    let n = b0.order();
    let norm = (0..n).all(|x| f[b0.id()][x] == am1.id() && f[x][b0.id()] == am1.id());
    let symm = (0..n).all(|x| (0..n).all(|y| f[x][y] == f[y][x]));
    let cocycle = (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                am1.mul(f[y][z], f[x][b0.mul(y, z)]) == am1.mul(f[x][y], f[b0.mul(x, y)][z])
            })
        })
    });
    norm && symm && cocycle
}

/// Enumerate Ext(B^0, A^{-1}) by normalized symmetric factor sets modulo
/// coboundaries, sorted canonical representatives.
pub fn ext_classes(b0: &FiniteGroup, am1: &FiniteGroup, budget: &Budget) -> Result<Vec<ExtensionClass>> {
    assert!(b0.is_abelian() && am1.is_abelian(), "Ext of abelian groups");
    let n = b0.order();
    let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    budget.admit((am1.order() as u128).pow(free.len() as u32))?;
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut f = vec![vec![am1.id(); n]; n];
        for (k, &(x, y)) in free.iter().enumerate() {
            f[x][y] = idx[k];
            f[y][x] = idx[k];
        }
        if is_symmetric_cocycle(b0, am1, &f) {
            let rep = canonical_rep(b0, am1, &flatten(&f));
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                reps.sort_unstable();
                return Ok(reps
                    .into_iter()
                    .map(|r| ExtensionClass {
                        quotient: b0.clone(),
                        kernel: am1.clone(),
                        factor_set: r.chunks(n).map(|c| c.to_vec()).collect(),
                    })
                    .collect());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < am1.order() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Forget a butterfly to its NE-SW extension class, via the canonical
/// set-section of π.
pub fn forget_to_ext(b: &AbelianButterfly) -> ExtensionClass {
    let b0 = &b.source.a_0;
    let am1 = &b.target.a_m1;
    let s: Vec<usize> = b0
        .elements()
        .map(|y| {
            if y == b0.id() {
                b.e.id()
            } else {
                b.e.elements().find(|&e| b.pi.apply(e) == y).expect("π onto")
            }
        })
        .collect();
    let f: Vec<usize> = b0
        .elements()
        .flat_map(|x| {
            let s = &s;
            b0.elements().map(move |y| {
                let v = b.e.mul(b.e.mul(s[x], s[y]), b.e.inv(s[b0.mul(x, y)]));
                b.iota.preimage(v).expect("factor set lands in im ι")
            })
        })
        .collect();
    let rep = canonical_rep(b0, am1, &f);
    let n = b0.order();
    ExtensionClass {
        quotient: b0.clone(),
        kernel: am1.clone(),
        factor_set: rep.chunks(n).map(|c| c.to_vec()).collect(),
    }
}

/// The group built from a factor set: elements (x, a) on B^0 × A^{-1}.
fn extension_group(ext: &ExtensionClass) -> (FiniteGroup, GroupHom, GroupHom) {
    let b0 = &ext.quotient;
    let am1 = &ext.kernel;
    let na = am1.order();
    let order = b0.order() * na;
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|p| {
            let (x, a) = unpair_index(p, na);
            (0..order)
                .map(|q| {
                    let (y, bb) = unpair_index(q, na);
                    pair_index(
                        b0.mul(x, y),
                        am1.mul(am1.mul(a, bb), ext.factor_set[x][y]),
                        na,
                    )
                })
                .collect()
        })
        .collect();
    let e = FiniteGroup::from_table(&rows, None).expect("factor-set extension");
    let iota = validate_hom(am1, &e, &am1.elements().map(|a| pair_index(b0.id(), a, na)).collect::<Vec<_>>())
        .expect("kernel inclusion");
    let pi = validate_hom(&e, b0, &(0..order).map(|p| unpair_index(p, na).0).collect::<Vec<_>>())
        .expect("projection");
    (e, iota, pi)
}

/// All abelian butterflies B• → A• with center built from one
/// representative extension per Ext class.
pub fn enumerate_abelian_butterflies(
    source: &AbelianComplex,
    target: &AbelianComplex,
    budget: &Budget,
) -> Result<Vec<AbelianButterfly>> {
    let mut out = Vec::new();
    for ext in ext_classes(&source.a_0, &target.a_m1, budget)? {
        let (e, iota, pi) = extension_group(&ext);
        let kappas: Vec<GroupHom> = enumerate_homs(&source.a_m1, &e, budget)?
            .into_iter()
            .filter(|k| k.then(&pi) == source.d)
            .collect();
        let js: Vec<GroupHom> = enumerate_homs(&e, &target.a_0, budget)?
            .into_iter()
            .filter(|j| iota.then(j) == target.d)
            .collect();
        for k in &kappas {
            for j in &js {
                if let Ok(ab) =
                    validate_abelian_butterfly(source, target, &e, k, &iota, &pi, j)
                {
                    out.push(ab);
                }
            }
        }
    }
    Ok(out)
}

/// Report of the fibration structure of forget: Butterflies(B•,A•) → Ext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtFibrationReport {
    pub ext_class_count: usize,
    pub classes_hit: Vec<bool>,
    pub essentially_surjective: bool,
    pub lifting_ok: bool,
    pub strict_homotopy_classes: usize,
    pub split_iso_classes: usize,
    pub kernel_classes_match: bool,
    pub kernel_automorphisms_match: bool,
}

fn count_self_homotopies(m: &StrictMorphism) -> usize {
    let h0 = &m.source.g0;
    let ker: Vec<usize> = m.target.delta.kernel_members();
    let mut idx = vec![0usize; h0.order()];
    let mut count = 0usize;
    loop {
        let gamma: Vec<usize> = idx.iter().map(|&i| ker[i]).collect();
        if crate::xmod::validate_homotopy(m, m, &gamma).is_ok() {
            count += 1;
        }
        let mut k = h0.order();
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ker.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

pub fn ext_fibration_check(
    source: &AbelianComplex,
    target: &AbelianComplex,
    budget: &Budget,
) -> Result<ExtFibrationReport> {
    let exts = ext_classes(&source.a_0, &target.a_m1, budget)?;
    let all = enumerate_abelian_butterflies(source, target, budget)?;
    let classes_hit: Vec<bool> = exts
        .iter()
        .map(|c| all.iter().any(|b| forget_to_ext(b) == *c))
        .collect();
    let essentially_surjective = classes_hit.iter().all(|&h| h);

    // lifting: transporting any butterfly along any automorphism of its
    // extension (θ∘ι = ι, π∘θ = π) again yields a valid butterfly over the
    // same class
    let mut lifting_ok = true;
    'lift: for b in &all {
        for theta in enumerate_homs(&b.e, &b.e, budget)? {
            if !theta.is_bijective()
                || b.iota.then(&theta) != b.iota
                || theta.then(&b.pi) != b.pi
            {
                continue;
            }
            let kappa = b.kappa.then(&theta);
            let j = theta.inverse().then(&b.j);
            let lifted =
                validate_abelian_butterfly(source, target, &b.e, &kappa, &b.iota, &b.pi, &j);
            if !lifted.map(|l| forget_to_ext(&l) == forget_to_ext(b)).unwrap_or(false) {
                lifting_ok = false;
                break 'lift;
            }
        }
    }

    // homotopy kernel of forget vs the strict morphism groupoid
    let sxm = source.to_xmod();
    let txm = target.to_xmod();
    let mut stricts: Vec<StrictMorphism> = Vec::new();
    for f1 in enumerate_homs(&source.a_m1, &target.a_m1, budget)? {
        for f0 in enumerate_homs(&source.a_0, &target.a_0, budget)? {
            if let Ok(m) = validate_strict(&sxm, &txm, &f1, &f0) {
                stricts.push(m);
            }
        }
    }
    let mut strict_reps: Vec<StrictMorphism> = Vec::new();
    for m in &stricts {
        let mut fresh = true;
        for r in &strict_reps {
            if crate::xmod::find_homotopy(r, m, budget)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            strict_reps.push(m.clone());
        }
    }
    let zero_class = forget_to_ext(&zero_butterfly(source, target));
    let split: Vec<&AbelianButterfly> =
        all.iter().filter(|b| forget_to_ext(b) == zero_class).collect();
    let mut split_reps: Vec<&AbelianButterfly> = Vec::new();
    for b in &split {
        let mut fresh = true;
        for r in &split_reps {
            if abelian_isomorphic(r, b, budget)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            split_reps.push(b);
        }
    }
    let mut strict_autos: Vec<usize> = strict_reps.iter().map(count_self_homotopies).collect();
    let mut split_autos: Vec<usize> = split_reps
        .iter()
        .map(|b| {
            let full = b.to_butterfly().expect("split butterfly has abelian center");
            butterfly_isomorphisms(&full, &full, budget).map(|v| v.len())
        })
        .collect::<Result<_>>()?;
    strict_autos.sort_unstable();
    split_autos.sort_unstable();
    Ok(ExtFibrationReport {
        ext_class_count: exts.len(),
        classes_hit,
        essentially_surjective,
        lifting_ok,
        strict_homotopy_classes: strict_reps.len(),
        split_iso_classes: split_reps.len(),
        kernel_classes_match: strict_reps.len() == split_reps.len(),
        kernel_automorphisms_match: strict_autos == split_autos,
    })
}

/// Homology comparison of the NW-SE diagonal [B^{-1} → E → A^0] against the
/// mapping cone of the strict leg P: E• → A• of the fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeHomologyReport {
    pub diagonal: [FiniteGroup; 3],
    pub cone: [FiniteGroup; 3],
    pub matches: bool,
}

pub fn cone_homology_check(b: &AbelianButterfly, budget: &Budget) -> Result<ConeHomologyReport> {
    // direct: H^{-2} = ker κ, H^{-1} = ker ȷ / im κ, H^0 = A^0 / im ȷ
    let (hm2, _) = subgroup_from_members(&b.source.a_m1, &b.kappa.kernel_members())?;
    let (kj, inc) = subgroup_from_members(&b.e, &b.j.kernel_members())?;
    let imk: Vec<usize> = b
        .kappa
        .image_members()
        .into_iter()
        .map(|v| inc.map.binary_search(&v).expect("im κ ⊆ ker ȷ"))
        .collect();
    let (hm1, _) = quotient(&kj, &normal_subgroup(&kj, &imk)?);
    let (h0, _) = quotient(
        &b.target.a_0,
        &normal_subgroup(&b.target.a_0, &b.j.image_members())?,
    );
    let diagonal = [hm2, hm1, h0];

    // independent: cone of P: E• → A•, with E• the fraction of the butterfly
    let full = b.to_butterfly()?;
    let (exm, _q, p) = fraction(&full);
    let c_m1 = direct_product(&exm.g0, &b.target.a_m1);
    let na = b.target.a_m1.order();
    let d_m2 = validate_hom(
        &exm.g1,
        &c_m1,
        &exm.g1
            .elements()
            .map(|x| pair_index(exm.g0.inv(exm.d(x)), p.f1.apply(x), na))
            .collect::<Vec<_>>(),
    )?;
    let d_m1 = validate_hom(
        &c_m1,
        &b.target.a_0,
        &(0..c_m1.order())
            .map(|k| {
                let (e, a) = unpair_index(k, na);
                b.target.a_0.mul(p.f0.apply(e), b.target.d.apply(a))
            })
            .collect::<Vec<_>>(),
    )?;
    let (cone_m2, _) = subgroup_from_members(&exm.g1, &d_m2.kernel_members())?;
    let (kd, kinc) = subgroup_from_members(&c_m1, &d_m1.kernel_members())?;
    let im2: Vec<usize> = d_m2
        .image_members()
        .into_iter()
        .map(|v| kinc.map.binary_search(&v).expect("d∘d = 0"))
        .collect();
    let (cone_m1, _) = quotient(&kd, &normal_subgroup(&kd, &im2)?);
    let (cone_0, _) = quotient(
        &b.target.a_0,
        &normal_subgroup(&b.target.a_0, &d_m1.image_members())?,
    );
    let cone = [cone_m2, cone_m1, cone_0];
    let matches = diagonal
        .iter()
        .zip(&cone)
        .all(|(x, y)| is_isomorphic(x, y, budget).map(|w| w.is_some()).unwrap_or(false));
    if !matches {
        for (n, (x, y)) in diagonal.iter().zip(&cone).enumerate() {
            if is_isomorphic(x, y, budget)?.is_none() {
                return Err(Error::ComparisonFailure(n as i32 - 2));
            }
        }
    }
    Ok(ConeHomologyReport { diagonal, cone, matches })
}

/// The abelian round trip: Φ of the butterfly is a symmetric monoidal
/// functor (for the trivial braidings) and Ψ returns an abelian butterfly
/// isomorphic to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeligneReport {
    pub functor_symmetric: bool,
    pub psi_is_abelian: bool,
    pub round_trip_iso: bool,
    pub lambda_nontrivial: bool,
}

pub fn deligne_roundtrip(b: &AbelianButterfly, budget: &Budget) -> Result<DeligneReport> {
    let full = b.to_butterfly()?;
    let f = crate::functor::phi(&full, &crate::functor::canonical_section(&full))?;
    // symmetric structure: trivial braidings on both wings; the braided
    // functor condition degenerates to symmetry of λ
    let functor_symmetric = full.h.g0.elements().all(|x| {
        full.h.g0.elements().all(|y| f.lam(x, y) == f.lam(y, x))
    });
    let back = crate::functor::psi(&f)?;
    let psi_is_abelian = AbelianButterfly::from_butterfly(&back).is_ok();
    let round_trip_iso = find_butterfly_isomorphism(&full, &back, budget)?.is_some();
    let id1 = full.g.g1.id();
    let lambda_nontrivial = full
        .h
        .g0
        .elements()
        .any(|x| full.h.g0.elements().any(|y| f.lam(x, y) != id1));
    Ok(DeligneReport { functor_symmetric, psi_is_abelian, round_trip_iso, lambda_nontrivial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn disc_z2() -> AbelianComplex {
        AbelianComplex::from_xmod(&samples::xm_disc_z2()).unwrap()
    }

    fn bz2() -> AbelianComplex {
        AbelianComplex::from_xmod(&samples::xm_bz2()).unwrap()
    }

    fn z2_id_z2() -> AbelianComplex {
        let z2 = samples::z(2);
        validate_complex(&z2, &z2, &GroupHom::identity(&z2)).unwrap()
    }

    fn z4_ab() -> AbelianButterfly {
        AbelianButterfly::from_butterfly(&samples::z4_butterfly()).unwrap()
    }

    #[test]
    fn validation() {
        let z4 = z4_ab();
        assert!(z4.e_abelian);
        assert!(
            AbelianButterfly::from_butterfly(&crate::butterfly::identity_butterfly(
                &samples::xm_z2_z4()
            ))
            .is_ok()
        );
        // a nonabelian wing is rejected
        let s3 = samples::xm_a3_s3();
        assert!(matches!(
            AbelianComplex::from_xmod(&s3),
            Err(Error::WingNotAbelian(_))
        ));
    }

    #[test]
    fn baer_sum_group_laws() {
        let budget = Budget::default();
        let z4 = z4_ab();
        let zero = zero_butterfly(&z4.source, &z4.target);
        let s = baer_sum(&z4, &zero).unwrap();
        assert!(abelian_isomorphic(&s, &z4, &budget).unwrap());
        // 2-torsion: Z4 + Z4 = split class
        let dbl = baer_sum(&z4, &z4).unwrap();
        assert!(abelian_isomorphic(&dbl, &zero, &budget).unwrap());
        let inv = baer_sum(&z4, &negate(&z4)).unwrap();
        assert!(abelian_isomorphic(&inv, &zero, &budget).unwrap());
        // commutativity up to iso
        let ab = baer_sum(&z4, &zero).unwrap();
        let ba = baer_sum(&zero, &z4).unwrap();
        assert!(abelian_isomorphic(&ab, &ba, &budget).unwrap());
        // associativity up to iso
        let left = baer_sum(&baer_sum(&z4, &z4).unwrap(), &z4).unwrap();
        let right = baer_sum(&z4, &baer_sum(&z4, &z4).unwrap()).unwrap();
        assert!(abelian_isomorphic(&left, &right, &budget).unwrap());
    }

    #[test]
    fn ext_computation() {
        let budget = Budget::default();
        assert_eq!(ext_classes(&samples::z(2), &samples::z(2), &budget).unwrap().len(), 2);
        assert_eq!(ext_classes(&samples::z(2), &samples::z(3), &budget).unwrap().len(), 1);
        let z4 = z4_ab();
        let cls = forget_to_ext(&z4);
        let zero_cls = forget_to_ext(&zero_butterfly(&z4.source, &z4.target));
        assert_ne!(cls, zero_cls);
        // additivity of forget on fixture pairs
        let dbl = baer_sum(&z4, &z4).unwrap();
        assert_eq!(forget_to_ext(&dbl), zero_cls);
        let s = baer_sum(&z4, &zero_butterfly(&z4.source, &z4.target)).unwrap();
        assert_eq!(forget_to_ext(&s), cls);
    }

    #[test]
    fn fibration_reports() {
        let budget = Budget::default();
        let r = ext_fibration_check(&disc_z2(), &bz2(), &budget).unwrap();
        assert_eq!(r.ext_class_count, 2);
        assert!(r.essentially_surjective);
        assert!(r.lifting_ok);
        assert_eq!(r.strict_homotopy_classes, 1);
        assert_eq!(r.split_iso_classes, 1);
        assert!(r.kernel_classes_match);
        assert!(r.kernel_automorphisms_match);
        // the Z4 extension class of Ext(Z2, Z2) is not hit over [Z2 →id Z2]
        let r2 = ext_fibration_check(&disc_z2(), &z2_id_z2(), &budget).unwrap();
        assert_eq!(r2.ext_class_count, 2);
        assert!(!r2.essentially_surjective);
        assert!(r2.classes_hit.iter().any(|&h| h));
        assert!(r2.lifting_ok);
    }

    #[test]
    fn cone_homology() {
        let budget = Budget::default();
        let z4 = z4_ab();
        let r = cone_homology_check(&z4, &budget).unwrap();
        assert!(r.matches);
        assert_eq!(r.diagonal[0].order(), 1);
        assert_eq!(r.diagonal[1].order(), 4);
        assert_eq!(r.diagonal[2].order(), 1);
        let id = AbelianButterfly::from_butterfly(&crate::butterfly::identity_butterfly(
            &samples::xm_z2_z4(),
        ))
        .unwrap();
        let r2 = cone_homology_check(&id, &budget).unwrap();
        assert!(r2.matches);
        assert_eq!(r2.diagonal.iter().map(|g| g.order()).collect::<Vec<_>>(), vec![1, 1, 1]);
        let zero = zero_butterfly(&disc_z2(), &bz2());
        let r3 = cone_homology_check(&zero, &budget).unwrap();
        assert!(r3.matches);
        assert_eq!(r3.diagonal[1].order(), 4); // V4
        // every enumerated abelian butterfly passes
        for b in enumerate_abelian_butterflies(&disc_z2(), &bz2(), &budget).unwrap() {
            assert!(cone_homology_check(&b, &budget).unwrap().matches);
        }
    }

    #[test]
    fn deligne_round_trips() {
        let budget = Budget::default();
        let id = AbelianButterfly::from_butterfly(&crate::butterfly::identity_butterfly(
            &samples::xm_z2_z4(),
        ))
        .unwrap();
        let r = deligne_roundtrip(&id, &budget).unwrap();
        assert!(r.functor_symmetric && r.psi_is_abelian && r.round_trip_iso);
        assert!(!r.lambda_nontrivial);
        let r2 = deligne_roundtrip(&z4_ab(), &budget).unwrap();
        assert!(r2.functor_symmetric && r2.psi_is_abelian && r2.round_trip_iso);
        assert!(r2.lambda_nontrivial);
        for b in enumerate_abelian_butterflies(&disc_z2(), &bz2(), &budget).unwrap() {
            let r = deligne_roundtrip(&b, &budget).unwrap();
            assert!(r.functor_symmetric && r.psi_is_abelian && r.round_trip_iso);
        }
    }
}
