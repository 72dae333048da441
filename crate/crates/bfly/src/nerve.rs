//! The nerve simplicial group of a crossed module (truncated at level 3) and
//! the Čech cocycle calculus over finite covers of the point.
//!
//! Level n of the nerve is the set G0 × G1ⁿ of strings of n composable
//! arrows: (x, g0, …, g_{n-1}) stands for x → x∂g0 → … . Strings multiply
//! arrowwise with the groupoid tensor, which gives the twisted law
//!
//!   (x, g•)·(x', g'•) = (x·x', (g_i^{x'_i}·g'_i)_i),  x'_i = x'·∂g'_0⋯∂g'_{i-1}.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{validate_hom, FiniteGroup, GroupHom};
use crate::xmod::CrossedModule;

const TOP_LEVEL: usize = 3;

fn encode(xm: &CrossedModule, x: usize, gs: &[usize]) -> usize {
    let mut idx = x;
    for &g in gs {
        idx = idx * xm.g1.order() + g;
    }
    idx
}

fn decode(xm: &CrossedModule, n: usize, mut idx: usize) -> (usize, Vec<usize>) {
    let mut gs = vec![0usize; n];
    for i in (0..n).rev() {
        gs[i] = idx % xm.g1.order();
        idx /= xm.g1.order();
    }
    (idx, gs)
}

fn level_mul(xm: &CrossedModule, n: usize, a: usize, b: usize) -> usize {
    let (x, gs) = decode(xm, n, a);
    let (x2, gs2) = decode(xm, n, b);
    let mut acc = x2;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(xm.g1.mul(xm.act(gs[i], acc), gs2[i]));
        acc = xm.g0.mul(acc, xm.d(gs2[i]));
    }
    encode(xm, xm.g0.mul(x, x2), &out)
}

fn level_group(xm: &CrossedModule, n: usize) -> FiniteGroup {
    let size = xm.g0.order() * xm.g1.order().pow(n as u32);
    let rows: Vec<Vec<usize>> =
        (0..size).map(|a| (0..size).map(|b| level_mul(xm, n, a, b)).collect()).collect();
    FiniteGroup::from_table(&rows, None).expect("nerve level is a group")
}

#[derive(Debug, Clone)]
pub struct NerveTruncation {
    pub xm: CrossedModule,
    /// levels[n] for n = 0..=3
    pub levels: Vec<FiniteGroup>,
    /// faces[n][i] = d_i: level n+1 → level n, for n+1 = 1..=3
    pub faces: Vec<Vec<GroupHom>>,
    /// degeneracies[n][i] = s_i: level n → level n+1, for n = 0..=2
    pub degeneracies: Vec<Vec<GroupHom>>,
}

fn face_map(xm: &CrossedModule, n: usize, i: usize, idx: usize) -> usize {
    let (x, gs) = decode(xm, n, idx);
    if i == 0 {
        let x2 = xm.g0.mul(x, xm.d(gs[0]));
        encode(xm, x2, &gs[1..])
    } else if i == n {
        encode(xm, x, &gs[..n - 1])
    } else {
        let mut out = gs.clone();
        out[i - 1] = xm.g1.mul(gs[i - 1], gs[i]);
        out.remove(i);
        encode(xm, x, &out)
    }
}

fn degeneracy_map(xm: &CrossedModule, n: usize, i: usize, idx: usize) -> usize {
    let (x, mut gs) = decode(xm, n, idx);
    gs.insert(i, xm.g1.id());
    encode(xm, x, &gs)
}

/// Build the nerve truncation through level 3. Every face and degeneracy is
/// verified to be a group homomorphism.
pub fn nerve(xm: &CrossedModule) -> NerveTruncation {
    let levels: Vec<FiniteGroup> = (0..=TOP_LEVEL).map(|n| level_group(xm, n)).collect();
    let mut faces = Vec::new();
    for n in 1..=TOP_LEVEL {
        let mut row = Vec::new();
        for i in 0..=n {
            let map: Vec<usize> =
                (0..levels[n].order()).map(|idx| face_map(xm, n, i, idx)).collect();
            row.push(
                validate_hom(&levels[n], &levels[n - 1], &map)
                    .expect("face maps are homomorphisms"),
            );
        }
        faces.push(row);
    }
    let mut degeneracies = Vec::new();
    for n in 0..TOP_LEVEL {
        let mut row = Vec::new();
        for i in 0..=n {
            let map: Vec<usize> =
                (0..levels[n].order()).map(|idx| degeneracy_map(xm, n, i, idx)).collect();
            row.push(
                validate_hom(&levels[n], &levels[n + 1], &map)
                    .expect("degeneracies are homomorphisms"),
            );
        }
        degeneracies.push(row);
    }
    NerveTruncation { xm: xm.clone(), levels, faces, degeneracies }
}

impl NerveTruncation {
    fn d(&self, n: usize, i: usize) -> &GroupHom {
        &self.faces[n - 1][i]
    }

    fn s(&self, n: usize, i: usize) -> &GroupHom {
        &self.degeneracies[n][i]
    }

    /// All simplicial identities expressible within levels ≤ 3.
    pub fn check_simplicial_identities(&self) -> Result<()> {
        let fail = |n| Err(Error::NotSimplicial(n));
        // d_i d_j = d_{j-1} d_i for i < j, from levels 2 and 3
        for n in 2..=TOP_LEVEL {
            for j in 1..=n {
                for i in 0..j {
                    if self.d(n, j).then(self.d(n - 1, i)) != self.d(n, i).then(self.d(n - 1, j - 1)) {
                        return fail(n);
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i ≤ j, from levels 0 and 1
        for n in 0..TOP_LEVEL - 1 {
            for j in 0..=n {
                for i in 0..=j {
                    if self.s(n, j).then(self.s(n + 1, i)) != self.s(n, i).then(self.s(n + 1, j + 1)) {
                        return fail(n);
                    }
                }
            }
        }
        // d_i s_j relations, from levels 1 and 2
        for n in 1..TOP_LEVEL {
            for j in 0..n {
                for i in 0..=n {
                    let lhs = self.s(n - 1, j).then(self.d(n, i));
                    let rhs = if i < j {
                        self.d(n - 1, i).then(self.s(n - 2, j - 1))
                    } else if i == j || i == j + 1 {
                        GroupHom::identity(&self.levels[n - 1])
                    } else {
                        self.d(n - 1, i - 1).then(self.s(n - 2, j))
                    };
                    if lhs != rhs {
                        return fail(n);
                    }
                }
            }
        }
        Ok(())
    }
}

/// A 0-cocycle over a cover Y of the point: x: Y → G0 and g: Y×Y → G1 with
/// x(y1) = x(y0)·∂g(y0,y1), g(y0,y2) = g(y0,y1)·g(y1,y2), g(y,y) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub xm: CrossedModule,
    pub cover: usize,
    pub x: Vec<usize>,
    pub g: Vec<Vec<usize>>,
}

pub fn cocycle_validate(xm: &CrossedModule, x: &[usize], g: &[Vec<usize>]) -> Result<Cocycle> {
    let k = x.len();
    if k == 0 || g.len() != k || g.iter().any(|r| r.len() != k) {
        return Err(Error::CoverMismatch);
    }
    if x.iter().any(|&v| v >= xm.g0.order()) || g.iter().flatten().any(|&v| v >= xm.g1.order()) {
        return Err(Error::CoverMismatch);
    }
    for y in 0..k {
        if g[y][y] != xm.g1.id() {
            return Err(Error::CocycleEdge(y, y));
        }
        for y2 in 0..k {
            if x[y2] != xm.g0.mul(x[y], xm.d(g[y][y2])) {
                return Err(Error::CocycleEdge(y, y2));
            }
            for y3 in 0..k {
                if g[y][y3] != xm.g1.mul(g[y][y2], g[y2][y3]) {
                    return Err(Error::CocycleTriangle(y, y2, y3));
                }
            }
        }
    }
    Ok(Cocycle { xm: xm.clone(), cover: k, x: x.to_vec(), g: g.to_vec() })
}

/// Pointwise product in the simplicial group: (x·x', g^{d1*x'}·g').
pub fn cocycle_product(c: &Cocycle, c2: &Cocycle) -> Result<Cocycle> {
    if c.cover != c2.cover || c.xm != c2.xm {
        return Err(Error::CoverMismatch);
    }
    let xm = &c.xm;
    let k = c.cover;
    let x: Vec<usize> = (0..k).map(|y| xm.g0.mul(c.x[y], c2.x[y])).collect();
    let g: Vec<Vec<usize>> = (0..k)
        .map(|y0| {
            (0..k)
                .map(|y1| xm.g1.mul(xm.act(c.g[y0][y1], c2.x[y0]), c2.g[y0][y1]))
                .collect()
        })
        .collect();
    cocycle_validate(xm, &x, &g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleEquivalence {
    pub from: Cocycle,
    pub to: Cocycle,
    pub a: Vec<usize>, // Y → G1
}

pub fn validate_cocycle_equivalence(
    from: &Cocycle,
    to: &Cocycle,
    a: &[usize],
) -> Result<CocycleEquivalence> {
    if from.cover != to.cover || from.xm != to.xm || a.len() != from.cover {
        return Err(Error::CoverMismatch);
    }
    let xm = &from.xm;
    for y in 0..from.cover {
        if to.x[y] != xm.g0.mul(from.x[y], xm.d(a[y])) {
            return Err(Error::CocycleEdge(y, y));
        }
        for y2 in 0..from.cover {
            if xm.g1.mul(from.g[y][y2], a[y2]) != xm.g1.mul(a[y], to.g[y][y2]) {
                return Err(Error::CocycleEdge(y, y2));
            }
        }
    }
    Ok(CocycleEquivalence { from: from.clone(), to: to.clone(), a: a.to_vec() })
}

/// Exhaustive witness search over a: Y → G1 (per-point candidates are the
/// cosets forced by x' = x·∂a).
pub fn cocycle_equivalent(
    c: &Cocycle,
    c2: &Cocycle,
    budget: &Budget,
) -> Result<Option<CocycleEquivalence>> {
    if c.cover != c2.cover || c.xm != c2.xm {
        return Err(Error::CoverMismatch);
    }
    let xm = &c.xm;
    let candidates: Vec<Vec<usize>> = (0..c.cover)
        .map(|y| {
            xm.g1
                .elements()
                .filter(|&a| xm.g0.mul(c.x[y], xm.d(a)) == c2.x[y])
                .collect()
        })
        .collect();
    let total: u128 = candidates.iter().map(|v| v.len() as u128).product();
    budget.admit(total)?;
    if candidates.iter().any(|v| v.is_empty()) {
        return Ok(None);
    }
    let mut idx = vec![0usize; c.cover];
    loop {
        let a: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, v)| v[i]).collect();
        if let Ok(w) = validate_cocycle_equivalence(c, c2, &a) {
            return Ok(Some(w));
        }
        let mut k = c.cover;
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

/// All cocycles over a cover of size `cover`, in lexicographic order of
/// (x, g). A cocycle is determined by x(0) and the row g(0, ·), so the scan
/// is |G0|·|G1|^(cover-1) candidates.
pub fn enumerate_cocycles(xm: &CrossedModule, cover: usize, budget: &Budget) -> Result<Vec<Cocycle>> {
    assert!(cover > 0);
    budget.admit((xm.g0.order() as u128) * (xm.g1.order() as u128).pow(cover as u32 - 1))?;
    let mut out = Vec::new();
    let mut t = vec![xm.g1.id(); cover];
    loop {
        for x0 in xm.g0.elements() {
            let x: Vec<usize> = (0..cover).map(|y| xm.g0.mul(x0, xm.d(t[y]))).collect();
            let g: Vec<Vec<usize>> = (0..cover)
                .map(|y0| {
                    (0..cover).map(|y1| xm.g1.mul(xm.g1.inv(t[y0]), t[y1])).collect()
                })
                .collect();
            out.push(cocycle_validate(xm, &x, &g).expect("parameterized cocycle"));
        }
        let mut k = cover;
        loop {
            if k <= 1 {
                let mut keys: Vec<(Vec<usize>, Vec<usize>, usize)> = out
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.x.clone(), c.g.concat(), i))
                    .collect();
                keys.sort();
                keys.dedup_by(|a, b| (&a.0, &a.1) == (&b.0, &b.1));
                return Ok(keys.into_iter().map(|(_, _, i)| out[i].clone()).collect());
            }
            k -= 1;
            t[k] += 1;
            if t[k] < xm.g1.order() {
                break;
            }
            t[k] = xm.g1.id();
        }
    }
}

/// Partition all cocycles into equivalence classes; returns the
/// lexicographically least representative of each class, in order.
pub fn classify_cocycles(xm: &CrossedModule, cover: usize, budget: &Budget) -> Result<Vec<Cocycle>> {
    let all = enumerate_cocycles(xm, cover, budget)?;
    let mut reps: Vec<Cocycle> = Vec::new();
    for c in all {
        let mut found = false;
        for r in &reps {
            if cocycle_equivalent(r, &c, budget)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(c);
        }
    }
    Ok(reps)
}

/// The simplicial-map form of a cocycle: components into nerve levels 0..2
/// over the Čech nerve of the cover (Y_n = Y^{n+1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMapData {
    pub xm: CrossedModule,
    pub cover: usize,
    pub xi0: Vec<usize>,          // Y → G0
    pub xi1: Vec<Vec<usize>>,     // Y² → level 1 indices
    pub xi2: Vec<Vec<Vec<usize>>>, // Y³ → level 2 indices
}

pub fn cocycle_to_simplicial(c: &Cocycle) -> SimplicialMapData {
    let xm = &c.xm;
    let k = c.cover;
    let xi1 = (0..k)
        .map(|y0| (0..k).map(|y1| encode(xm, c.x[y0], &[c.g[y0][y1]])).collect())
        .collect();
    let xi2 = (0..k)
        .map(|y0| {
            (0..k)
                .map(|y1| {
                    (0..k)
                        .map(|y2| encode(xm, c.x[y0], &[c.g[y0][y1], c.g[y1][y2]]))
                        .collect()
                })
                .collect()
        })
        .collect();
    SimplicialMapData { xm: xm.clone(), cover: k, xi0: c.x.clone(), xi1, xi2 }
}

/// Recover the cocycle, after verifying the data commutes with all faces and
/// degeneracies expressible in levels ≤ 2.
pub fn cocycle_from_simplicial(s: &SimplicialMapData) -> Result<Cocycle> {
    let xm = &s.xm;
    let k = s.cover;
    if s.xi0.len() != k || s.xi1.len() != k || s.xi2.len() != k {
        return Err(Error::CoverMismatch);
    }
    // level-1 compatibility: d0 ξ1 = ξ0 d0, d1 ξ1 = ξ0 d1, ξ1 s0 = s0 ξ0
    for y0 in 0..k {
        for y1 in 0..k {
            if face_map(xm, 1, 0, s.xi1[y0][y1]) != s.xi0[y1]
                || face_map(xm, 1, 1, s.xi1[y0][y1]) != s.xi0[y0]
            {
                return Err(Error::NotSimplicial(1));
            }
        }
        if s.xi1[y0][y0] != degeneracy_map(xm, 0, 0, s.xi0[y0]) {
            return Err(Error::NotSimplicial(1));
        }
    }
    // level-2 compatibility with the three faces and two degeneracies
    for y0 in 0..k {
        for y1 in 0..k {
            for y2 in 0..k {
                let v = s.xi2[y0][y1][y2];
                if face_map(xm, 2, 0, v) != s.xi1[y1][y2]
                    || face_map(xm, 2, 1, v) != s.xi1[y0][y2]
                    || face_map(xm, 2, 2, v) != s.xi1[y0][y1]
                {
                    return Err(Error::NotSimplicial(2));
                }
            }
            if s.xi2[y0][y0][y1] != degeneracy_map(xm, 1, 0, s.xi1[y0][y1])
                || s.xi2[y0][y1][y1] != degeneracy_map(xm, 1, 1, s.xi1[y0][y1])
            {
                return Err(Error::NotSimplicial(2));
            }
        }
    }
    let x = s.xi0.clone();
    let g: Vec<Vec<usize>> = (0..k)
        .map(|y0| (0..k).map(|y1| decode(xm, 1, s.xi1[y0][y1]).1[0]).collect())
        .collect();
    cocycle_validate(xm, &x, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn nerve_levels_and_faces() {
        let xm = samples::xm_z2_z2_zero();
        let n = nerve(&xm);
        assert_eq!(n.levels[2].order(), 8);
        // d1(x, g0, g1) = (x, g0+g1)
        let idx = encode(&xm, 1, &[1, 1]);
        assert_eq!(n.faces[1][1].apply(idx), encode(&xm, 1, &[0]));
        // s0 at level 0: x ↦ (x, 1)
        assert_eq!(n.degeneracies[0][0].apply(1), encode(&xm, 1, &[0]));
        n.check_simplicial_identities().unwrap();

        let xm = samples::xm_z2_z4();
        let n = nerve(&xm);
        // d0(x, 1) = x·∂1 = x + 2
        assert_eq!(n.faces[0][0].apply(encode(&xm, 1, &[1])), 3);
        n.check_simplicial_identities().unwrap();
    }

    #[test]
    fn simplicial_identities_all_fixtures() {
        for (name, xm) in samples::all_xmods() {
            nerve(&xm)
                .check_simplicial_identities()
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn cocycle_validation_and_product() {
        let xm = samples::xm_z2_z4();
        let c = cocycle_validate(&xm, &[0, 2], &[vec![0, 1], vec![1, 0]]).unwrap();
        // constant cocycle is a unit
        let unit = cocycle_validate(&xm, &[0, 0], &[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(cocycle_product(&c, &unit).unwrap(), c);
        let sq = cocycle_product(&c, &c).unwrap();
        assert_eq!(sq.x, vec![0, 0]);
        assert_eq!(sq.g[0][1], 0); // 1 + 1 = 0 in Z2
        // ∂ = 0 forces x constant
        let bad = cocycle_validate(
            &samples::xm_z2_z2_zero(),
            &[0, 1],
            &[vec![0, 0], vec![0, 0]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn classification_matches_pi0() {
        let b = Budget::default();
        for (name, xm) in samples::all_xmods() {
            let pi0 = xm.pi0().0.order();
            for cover in 1..=3 {
                let reps = classify_cocycles(&xm, cover, &b).unwrap();
                assert_eq!(reps.len(), pi0, "{name} cover {cover}");
            }
        }
    }

    #[test]
    fn simplicial_round_trip() {
        let xm = samples::xm_z2_z4();
        for c in enumerate_cocycles(&xm, 3, &Budget::default()).unwrap() {
            let s = cocycle_to_simplicial(&c);
            assert_eq!(cocycle_from_simplicial(&s).unwrap(), c);
        }
    }

    #[test]
    fn product_descends_to_classes() {
        let b = Budget::default();
        let xm = samples::xm_z2_z4();
        let all = enumerate_cocycles(&xm, 2, &b).unwrap();
        for c in &all {
            for c2 in &all {
                for d in &all {
                    if cocycle_equivalent(c, d, &b).unwrap().is_some() {
                        let p1 = cocycle_product(c, c2).unwrap();
                        let p2 = cocycle_product(d, c2).unwrap();
                        assert!(cocycle_equivalent(&p1, &p2, &b).unwrap().is_some());
                    }
                }
            }
        }
    }
}
