//! Finite groups as explicit multiplication tables, homomorphisms, right
//! actions, and the elementary constructions every other module consumes.
//!
//! Elements are indices into the table. All target instances have order ≤ 32,
//! so every axiom is checked by a total scan and every search is exhaustive.

use crate::budget::Budget;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>, // row-major, table[a * order + b] = a·b
    identity: usize,
    inverse: Vec<usize>,
    pub label: Option<String>,
}

/// Labels are display-only; equality is equality of tables.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validate a raw square table. Reports the first violated group axiom
    /// with witnessing indices.
    pub fn from_table(rows: &[Vec<usize>], label: Option<&str>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NoIdentity);
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotClosed(a, row.len().min(order)));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::NotClosed(a, b));
                }
                table.push(v);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = vec![0usize; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or(Error::NoInverse(a))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let ab_c = table[table[a * order + b] * order + c];
                    let a_bc = table[a * order + table[b * order + c]];
                    if ab_c != a_bc {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, identity, inverse, label: label.map(str::to_owned) })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(&[vec![0]], Some("1")).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let rows: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&rows, Some(&format!("Z{n}"))).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// x⁻¹·a·x
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order)
            .all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Smallest sorted subgroup containing `gens`.
    pub fn generated_members(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for &g in gens {
                let n = self.mul(e, g);
                if !seen[n] {
                    seen[n] = true;
                    queue.push(n);
                }
            }
        }
        let mut members: Vec<usize> = (0..self.order).filter(|&e| seen[e]).collect();
        members.sort_unstable();
        members
    }

    /// Greedy small generating sequence: repeatedly adjoin the least element
    /// outside the subgroup generated so far. Deterministic.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = self.generated_members(&gens);
        while have.len() < self.order {
            let next = (0..self.order).find(|e| have.binary_search(e).is_err()).unwrap();
            gens.push(next);
            have = self.generated_members(&gens);
        }
        gens
    }

    /// BFS enumeration of all elements from the generating set, recording for
    /// each non-identity element a predecessor and generator producing it.
    /// Used to extend a choice of generator images to a full map.
    fn bfs_expressions(&self, gens: &[usize]) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut expr = vec![(usize::MAX, usize::MAX); self.order];
        let mut order_list = vec![self.identity];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut i = 0;
        while i < order_list.len() {
            let e = order_list[i];
            i += 1;
            for (gi, &g) in gens.iter().enumerate() {
                let n = self.mul(e, g);
                if !seen[n] {
                    seen[n] = true;
                    expr[n] = (e, gi);
                    order_list.push(n);
                }
            }
        }
        (order_list, expr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

/// Validate that `map` is a homomorphism `source → target`.
pub fn validate_hom(source: &FiniteGroup, target: &FiniteGroup, map: &[usize]) -> Result<GroupHom> {
    if map.len() != source.order() {
        return Err(Error::BadShape { got: map.len(), want: source.order() });
    }
    if let Some(&v) = map.iter().find(|&&v| v >= target.order()) {
        return Err(Error::BadShape { got: v, want: target.order() });
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Err(Error::NotHomomorphism(a, b));
            }
        }
    }
    Ok(GroupHom { source: source.clone(), target: target.clone(), map: map.to_vec() })
}

impl GroupHom {
    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn zero(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![target.id(); source.order()],
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Diagrammatic composition: `self` then `then`.
    pub fn then(&self, then: &GroupHom) -> GroupHom {
        debug_assert_eq!(self.target, then.source);
        GroupHom {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&a| then.map[a]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> GroupHom {
        assert!(self.is_bijective());
        let mut map = vec![0usize; self.target.order()];
        for a in self.source.elements() {
            map[self.map[a]] = a;
        }
        GroupHom { source: self.target.clone(), target: self.source.clone(), map }
    }

    /// Sorted image members.
    pub fn image_members(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn kernel_members(&self) -> Vec<usize> {
        self.source.elements().filter(|&a| self.map[a] == self.target.id()).collect()
    }

    /// Unique preimage of `v` when the hom is injective; None if `v` is not hit.
    pub fn preimage(&self, v: usize) -> Option<usize> {
        self.map.iter().position(|&w| w == v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAction {
    pub actor: FiniteGroup,
    pub space: FiniteGroup,
    act: Vec<usize>, // act[g * actor.order + x] = g^x
}

/// Validate a right action of `actor` on `space` by automorphisms.
pub fn validate_action(actor: &FiniteGroup, space: &FiniteGroup, act: &[Vec<usize>]) -> Result<RightAction> {
    if act.len() != space.order() || act.iter().any(|r| r.len() != actor.order()) {
        return Err(Error::BadShape { got: act.len(), want: space.order() });
    }
    let mut flat = Vec::with_capacity(space.order() * actor.order());
    for (g, row) in act.iter().enumerate() {
        for (x, &v) in row.iter().enumerate() {
            if v >= space.order() {
                return Err(Error::NotAnAction(g, x));
            }
            flat.push(v);
        }
    }
    let a = RightAction { actor: actor.clone(), space: space.clone(), act: flat };
    for g in space.elements() {
        if a.act(g, actor.id()) != g {
            return Err(Error::NotAnAction(g, actor.id()));
        }
        for x in actor.elements() {
            for y in actor.elements() {
                if a.act(a.act(g, x), y) != a.act(g, actor.mul(x, y)) {
                    return Err(Error::NotAnAction(g, actor.mul(x, y)));
                }
            }
            for h in space.elements() {
                if a.act(space.mul(g, h), x) != space.mul(a.act(g, x), a.act(h, x)) {
                    return Err(Error::NotAnAction(space.mul(g, h), x));
                }
            }
        }
    }
    Ok(a)
}

impl RightAction {
    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        RightAction {
            actor: actor.clone(),
            space: space.clone(),
            act: (0..space.order()).flat_map(|g| vec![g; actor.order()]).collect(),
        }
    }

    /// g^x
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.actor.order() + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.space.order())
            .map(|g| self.act[g * self.actor.order()..(g + 1) * self.actor.order()].to_vec())
            .collect()
    }

    /// Restrict along a homomorphism into the actor: g^x := g^{f(x)}.
    pub fn via(&self, f: &GroupHom) -> RightAction {
        debug_assert_eq!(f.target, self.actor);
        let actor = f.source.clone();
        let mut act = Vec::with_capacity(self.space.order() * actor.order());
        for g in self.space.elements() {
            for x in actor.elements() {
                act.push(self.act(g, f.apply(x)));
            }
        }
        RightAction { actor, space: self.space.clone(), act }
    }

    /// Conjugation action of the ambient group on an embedded subgroup:
    /// g^x = i⁻¹(x⁻¹·i(g)·x). The inclusion must be injective with image
    /// closed under conjugation.
    pub fn by_conjugation(inclusion: &GroupHom) -> Result<RightAction> {
        let ambient = &inclusion.target;
        let sub = &inclusion.source;
        let mut act = Vec::with_capacity(sub.order() * ambient.order());
        for g in sub.elements() {
            for x in ambient.elements() {
                let c = ambient.conj(inclusion.apply(g), x);
                let p = inclusion.preimage(c).ok_or(Error::NotNormal { member: g, by: x })?;
                act.push(p);
            }
        }
        Ok(RightAction { actor: ambient.clone(), space: sub.clone(), act })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubgroup {
    pub ambient: FiniteGroup,
    pub members: Vec<usize>, // sorted
}

/// Validate that a sorted member set is a normal subgroup of `g`.
pub fn normal_subgroup(g: &FiniteGroup, members: &[usize]) -> Result<NormalSubgroup> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let contains = |e: usize| members.binary_search(&e).is_ok();
    if !contains(g.id()) {
        return Err(Error::NotSubgroup(g.id()));
    }
    for &a in &members {
        if !contains(g.inv(a)) {
            return Err(Error::NotSubgroup(a));
        }
        for &b in &members {
            if !contains(g.mul(a, b)) {
                return Err(Error::NotSubgroup(g.mul(a, b)));
            }
        }
    }
    for &a in &members {
        for x in g.elements() {
            if !contains(g.conj(a, x)) {
                return Err(Error::NotNormal { member: a, by: x });
            }
        }
    }
    Ok(NormalSubgroup { ambient: g.clone(), members })
}

pub fn kernel(f: &GroupHom) -> NormalSubgroup {
    normal_subgroup(&f.source, &f.kernel_members())
        .expect("kernel of a validated hom is a normal subgroup")
}

pub fn image(f: &GroupHom) -> Vec<usize> {
    f.image_members()
}

/// Subgroup on an explicit member set, with its inclusion into the ambient
/// group. Element `i` of the result is the `i`-th member in sorted order.
pub fn subgroup_from_members(g: &FiniteGroup, members: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let index_of = |e: usize| -> Result<usize> {
        members.binary_search(&e).map_err(|_| Error::NotSubgroup(e))
    };
    let n = members.len();
    let mut rows = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = index_of(g.mul(members[i], members[j]))?;
        }
    }
    let sub = FiniteGroup::from_table(&rows, None)?;
    let inc = GroupHom { source: sub.clone(), target: g.clone(), map: members };
    Ok((sub, inc))
}

/// Quotient by a normal subgroup. Cosets are ordered by their smallest member
/// index, so the result is deterministic; the projection hom is returned.
pub fn quotient(g: &FiniteGroup, n: &NormalSubgroup) -> (FiniteGroup, GroupHom) {
    debug_assert_eq!(*g, n.ambient);
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        // right coset N·x; x is its smallest unseen member, hence the rep
        let c = reps.len();
        reps.push(x);
        for &m in &n.members {
            coset_of[g.mul(m, x)] = c;
        }
    }
    let k = reps.len();
    let mut rows = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            rows[i][j] = coset_of[g.mul(reps[i], reps[j])];
        }
    }
    let q = FiniteGroup::from_table(&rows, None).expect("coset table of a normal subgroup");
    let proj = GroupHom { source: g.clone(), target: q.clone(), map: coset_of };
    (q, proj)
}

pub fn pair_index(i: usize, j: usize, second_order: usize) -> usize {
    i * second_order + j
}

pub fn unpair_index(k: usize, second_order: usize) -> (usize, usize) {
    (k / second_order, k % second_order)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let n = a.order() * b.order();
    let mut rows = vec![vec![0usize; n]; n];
    for x in 0..n {
        let (xa, xb) = unpair_index(x, b.order());
        for y in 0..n {
            let (ya, yb) = unpair_index(y, b.order());
            rows[x][y] = pair_index(a.mul(xa, ya), b.mul(xb, yb), b.order());
        }
    }
    FiniteGroup::from_table(&rows, None).expect("direct product")
}

/// Semidirect product base ⋉ normal with twisted multiplication
/// (y0,g0)(y1,g1) = (y0·y1, g0^{y1}·g1). Element (y,g) has index
/// y·|normal| + g.
pub fn semidirect_product(
    base: &FiniteGroup,
    normal: &FiniteGroup,
    action: &RightAction,
) -> Result<FiniteGroup> {
    if action.actor != *base || action.space != *normal {
        return Err(Error::ShapeMismatch("semidirect product action"));
    }
    let n = base.order() * normal.order();
    let mut rows = vec![vec![0usize; n]; n];
    for x in 0..n {
        let (y0, g0) = unpair_index(x, normal.order());
        for y in 0..n {
            let (y1, g1) = unpair_index(y, normal.order());
            rows[x][y] = pair_index(
                base.mul(y0, y1),
                normal.mul(action.act(g0, y1), g1),
                normal.order(),
            );
        }
    }
    FiniteGroup::from_table(&rows, None)
}

/// Shared exhaustive search over homomorphisms a → b: choose images for a
/// generating sequence of `a` (pruned by element orders), extend by the BFS
/// expressions, and keep maps passing the full homomorphism scan. Results are
/// in lexicographic order of the full map, so callers get canonical output.
fn hom_search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    budget: &Budget,
    iso_only: bool,
    first_only: bool,
) -> Result<Vec<GroupHom>> {
    budget.admit_order(a.order().max(b.order()))?;
    let gens = a.generating_set();
    let (bfs, expr) = a.bfs_expressions(&gens);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let go = a.element_order(g);
            b.elements()
                .filter(|&i| {
                    let io = b.element_order(i);
                    if iso_only { io == go } else { go % io == 0 }
                })
                .collect()
        })
        .collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    budget.admit(total)?;
    if iso_only && a.order() != b.order() {
        return Ok(Vec::new());
    }

    let mut found = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    'outer: loop {
        if candidates.iter().all(|c| !c.is_empty()) {
            let imgs: Vec<usize> =
                idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            let mut map = vec![usize::MAX; a.order()];
            map[a.id()] = b.id();
            for &e in bfs.iter().skip(1) {
                let (p, gi) = expr[e];
                map[e] = b.mul(map[p], imgs[gi]);
            }
            let ok = (0..a.order()).all(|x| {
                (0..a.order()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y]))
            }) && (!iso_only || {
                let mut seen = vec![false; b.order()];
                map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            });
            if ok {
                found.push(map);
                if first_only {
                    break 'outer;
                }
            }
        } else {
            break;
        }
        // odometer
        let mut k = gens.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    found.sort_unstable();
    found.dedup();
    Ok(found
        .into_iter()
        .map(|map| GroupHom { source: a.clone(), target: b.clone(), map })
        .collect())
}

/// All homomorphisms a → b, exhaustive, in lexicographic map order.
pub fn enumerate_homs(a: &FiniteGroup, b: &FiniteGroup, budget: &Budget) -> Result<Vec<GroupHom>> {
    hom_search(a, b, budget, false, false)
}

/// A witness isomorphism, or None. Deterministic: the first witness in the
/// canonical search order.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup, budget: &Budget) -> Result<Option<GroupHom>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    Ok(hom_search(a, b, budget, true, true)?.into_iter().next())
}

/// The automorphism group of `g` as a FiniteGroup (product: apply left factor
/// first), together with the automorphisms in element order.
pub fn automorphism_group(g: &FiniteGroup, budget: &Budget) -> Result<(FiniteGroup, Vec<GroupHom>)> {
    let autos = hom_search(g, g, budget, true, false)?;
    let find = |map: &[usize]| autos.iter().position(|h| h.map == map).unwrap();
    let n = autos.len();
    let mut rows = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let comp: Vec<usize> = autos[i].map.iter().map(|&x| autos[j].map[x]).collect();
            rows[i][j] = find(&comp);
        }
    }
    let group = FiniteGroup::from_table(&rows, None)?;
    Ok((group, autos))
}
