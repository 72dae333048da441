//! Braidings on crossed modules, the multiplication butterfly with its two
//! splittings s1, s2, symmetric and Picard refinements, and braided
//! butterflies with the induced braiding on the fraction.

use crate::budget::Budget;
use crate::butterfly::{fraction, validate_butterfly, Butterfly};
use crate::error::{Error, Result};
use crate::group::{pair_index, validate_hom, FiniteGroup, GroupHom};
use crate::xmod::{product_xmod, CrossedModule};

/// A braiding c: G0×G0 → G1 on a crossed module, with ∂c(x,y) the
/// commutator y⁻¹x⁻¹yx, the two hexagon cocycle conditions, and the two
/// functoriality relations against ∂.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Braiding {
    pub xm: CrossedModule,
    pub c: Vec<Vec<usize>>, // indexed [x][y]
}

impl Braiding {
    pub fn c(&self, x: usize, y: usize) -> usize {
        self.c[x][y]
    }

    pub fn is_symmetric(&self) -> bool {
        let g1 = &self.xm.g1;
        self.xm.g0.elements().all(|x| {
            self.xm.g0.elements().all(|y| g1.mul(self.c(x, y), self.c(y, x)) == g1.id())
        })
    }

    pub fn is_picard(&self) -> bool {
        self.is_symmetric() && self.xm.g0.elements().all(|x| self.c(x, x) == self.xm.g1.id())
    }
}

pub fn validate_braiding(xm: &CrossedModule, c: &[Vec<usize>]) -> Result<Braiding> {
    let n0 = xm.g0.order();
    if c.len() != n0 || c.iter().any(|r| r.len() != n0 || r.iter().any(|&v| v >= xm.g1.order())) {
        return Err(Error::BadShape { got: c.len(), want: n0 });
    }
    let br = Braiding { xm: xm.clone(), c: c.to_vec() };
    let g0 = &xm.g0;
    let g1 = &xm.g1;
    for x in g0.elements() {
        for y in g0.elements() {
            let comm = g0.mul(g0.mul(g0.inv(y), g0.inv(x)), g0.mul(y, x));
            if xm.d(br.c(x, y)) != comm {
                return Err(Error::BraidingFails(vec![x, y], "boundary"));
            }
            for z in g0.elements() {
                if br.c(x, g0.mul(y, z)) != g1.mul(xm.act(br.c(x, y), z), br.c(x, z)) {
                    return Err(Error::BraidingFails(vec![x, y, z], "left hexagon"));
                }
                if br.c(g0.mul(x, y), z) != g1.mul(br.c(y, z), xm.act(br.c(x, z), y)) {
                    return Err(Error::BraidingFails(vec![x, y, z], "right hexagon"));
                }
            }
        }
        for h in g1.elements() {
            if br.c(x, xm.d(h)) != g1.mul(g1.inv(h), xm.act(h, x)) {
                return Err(Error::BraidingFails(vec![x, h], "functoriality against ∂ (right)"));
            }
            if br.c(xm.d(h), x) != g1.mul(g1.inv(xm.act(h, x)), h) {
                return Err(Error::BraidingFails(vec![h, x], "functoriality against ∂ (left)"));
            }
        }
    }
    Ok(br)
}

/// All braidings on a crossed module. Each entry c(x,y) ranges over the
/// ∂-coset of the commutator; the identity row and column are forced.
pub fn enumerate_braidings(xm: &CrossedModule, budget: &Budget) -> Result<Vec<Braiding>> {
    let g0 = &xm.g0;
    let g1 = &xm.g1;
    let free: Vec<(usize, usize)> = g0
        .elements()
        .flat_map(|x| g0.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| x != g0.id() && y != g0.id())
        .collect();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for &(x, y) in &free {
        let comm = g0.mul(g0.mul(g0.inv(y), g0.inv(x)), g0.mul(y, x));
        let cs: Vec<usize> = g1.elements().filter(|&t| xm.d(t) == comm).collect();
        if cs.is_empty() {
            return Ok(Vec::new());
        }
        candidates.push(cs);
    }
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    budget.admit(total)?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut c = vec![vec![g1.id(); g0.order()]; g0.order()];
        for (k, &(x, y)) in free.iter().enumerate() {
            c[x][y] = candidates[k][idx[k]];
        }
        if let Ok(br) = validate_braiding(xm, &c) {
            out.push(br);
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                return Ok(out);
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

/// Arrow-level restatement on the realized groupoid: the braiding arrows
/// s_{x,y} = (xy, c(x,y)): xy → yx; symmetric iff s_{y,x}∘s_{x,y} is the
/// identity arrow everywhere, Picard iff additionally s_{x,x} = id.
pub fn arrow_level_symmetric(br: &Braiding) -> bool {
    let g = br.xm.realize();
    let g0 = &br.xm.g0;
    g0.elements().all(|x| {
        g0.elements().all(|y| {
            let sxy = (g0.mul(x, y), br.c(x, y));
            let syx = (g0.mul(y, x), br.c(y, x));
            g.compose(sxy, syx) == g.id_arrow(g0.mul(x, y))
        })
    })
}

pub fn arrow_level_picard(br: &Braiding) -> bool {
    let g = br.xm.realize();
    let g0 = &br.xm.g0;
    arrow_level_symmetric(br)
        && g0.elements().all(|x| (g0.mul(x, x), br.c(x, x)) == g.id_arrow(g0.mul(x, x)))
}

/// The multiplication butterfly of a braiding: a butterfly from G•×G• to G•
/// with center P on the set G1×G0×G0, together with the two splittings
/// s1(x) = (1,x,1) and s2(y) = (1,1,y). The product law is the unique one
/// making β(g) = (g,1,1) central over the commutator relation of eq-style
/// braiding transfer: β(c(x,y)) = s2(y)⁻¹·s1(x)⁻¹·s2(y)·s1(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationButterfly {
    pub bfly: Butterfly,
    pub s1: GroupHom,
    pub s2: GroupHom,
}

pub fn multiplication_butterfly(br: &Braiding) -> Result<MultiplicationButterfly> {
    let xm = &br.xm;
    let g0 = &xm.g0;
    let g1 = &xm.g1;
    let (n0, n1) = (g0.order(), g1.order());
    let enc = |g: usize, x: usize, y: usize| (g * n0 + x) * n0 + y;
    let dec = |k: usize| (k / (n0 * n0), (k / n0) % n0, k % n0);
    let order = n1 * n0 * n0;
    let bad = |msg: String| Error::ConstructionInconsistent(msg);
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|a| {
            let (g, x, y) = dec(a);
            (0..order)
                .map(|b| {
                    let (g2, x2, y2) = dec(b);
                    // (g,x,y)(g',x',y') = (g · g'^{(xy)⁻¹} · c(x',y)^{(xx'y)⁻¹}, xx', yy')
                    let t1 = xm.act(g2, g0.inv(g0.mul(x, y)));
                    let t2 = xm.act(br.c(x2, y), g0.inv(g0.mul(g0.mul(x, x2), y)));
                    enc(g1.mul(g1.mul(g, t1), t2), g0.mul(x, x2), g0.mul(y, y2))
                })
                .collect()
        })
        .collect();
    let p = FiniteGroup::from_table(&rows, None)
        .map_err(|e| bad(format!("product law is not a group: {e}")))?;
    let h = product_xmod(xm, xm);
    let alpha_map: Vec<usize> = (0..h.g1.order())
        .map(|k| {
            let (i, j) = crate::group::unpair_index(k, n1);
            enc(g1.inv(g1.mul(i, j)), xm.d(i), xm.d(j))
        })
        .collect();
    let beta_map: Vec<usize> = g1.elements().map(|g| enc(g, g0.id(), g0.id())).collect();
    let rho_map: Vec<usize> = (0..order)
        .map(|k| {
            let (_, x, y) = dec(k);
            pair_index(x, y, n0)
        })
        .collect();
    let sigma_map: Vec<usize> = (0..order)
        .map(|k| {
            let (g, x, y) = dec(k);
            g0.mul(xm.d(g), g0.mul(x, y))
        })
        .collect();
    let bfly = validate_butterfly(
        &h,
        xm,
        &p,
        &validate_hom(&h.g1, &p, &alpha_map).map_err(|e| bad(format!("α: {e}")))?,
        &validate_hom(g1, &p, &beta_map).map_err(|e| bad(format!("β: {e}")))?,
        &validate_hom(&p, &h.g0, &rho_map).map_err(|e| bad(format!("ρ: {e}")))?,
        &validate_hom(&p, g0, &sigma_map).map_err(|e| bad(format!("σ: {e}")))?,
    )
    .map_err(|e| bad(format!("butterfly axioms: {e}")))?;
    let s1 = validate_hom(g0, &p, &g0.elements().map(|x| enc(g1.id(), x, g0.id())).collect::<Vec<_>>())
        .map_err(|e| bad(format!("s1: {e}")))?;
    let s2 = validate_hom(g0, &p, &g0.elements().map(|y| enc(g1.id(), g0.id(), y)).collect::<Vec<_>>())
        .map_err(|e| bad(format!("s2: {e}")))?;
    // ρ∘s1 = ι1, ρ∘s2 = ι2, σ∘s_i = id, s_i(∂g) = α(ι_i(g))·β(g)
    for x in g0.elements() {
        if bfly.pi.apply(s1.apply(x)) != pair_index(x, g0.id(), n0)
            || bfly.pi.apply(s2.apply(x)) != pair_index(g0.id(), x, n0)
        {
            return Err(bad(format!("ρ∘s_i is not the factor injection at {x}")));
        }
        if bfly.j.apply(s1.apply(x)) != x || bfly.j.apply(s2.apply(x)) != x {
            return Err(bad(format!("σ∘s_i ≠ id at {x}")));
        }
    }
    for g in g1.elements() {
        let lhs1 = s1.apply(xm.d(g));
        let rhs1 = p.mul(bfly.kappa.apply(pair_index(g, g1.id(), n1)), bfly.iota.apply(g));
        let lhs2 = s2.apply(xm.d(g));
        let rhs2 = p.mul(bfly.kappa.apply(pair_index(g1.id(), g, n1)), bfly.iota.apply(g));
        if lhs1 != rhs1 || lhs2 != rhs2 {
            return Err(bad(format!("s_i(∂g) ≠ α(ι_i(g))·β(g) at g = {g}")));
        }
    }
    Ok(MultiplicationButterfly { bfly, s1, s2 })
}

/// Recover the braiding from a multiplication butterfly:
/// c(x,y) = β⁻¹(s2(y)⁻¹·s1(x)⁻¹·s2(y)·s1(x)).
pub fn braiding_from_butterfly(mb: &MultiplicationButterfly) -> Result<Braiding> {
    let xm = &mb.bfly.g;
    let p = &mb.bfly.e;
    let c: Vec<Vec<usize>> = xm
        .g0
        .elements()
        .map(|x| {
            xm.g0
                .elements()
                .map(|y| {
                    let w = p.mul(
                        p.mul(p.inv(mb.s2.apply(y)), p.inv(mb.s1.apply(x))),
                        p.mul(mb.s2.apply(y), mb.s1.apply(x)),
                    );
                    mb.bfly.iota.preimage(w).expect("commutator of splittings lies in im β")
                })
                .collect()
        })
        .collect();
    validate_braiding(xm, &c)
}

/// Def-16 braided butterfly check:
/// κ⟨π(a),π(b)⟩_H · ι⟨ȷ(a),ȷ(b)⟩_G = b⁻¹a⁻¹ba for all a, b in the center.
pub fn is_braided_butterfly(b: &Butterfly, br_h: &Braiding, br_g: &Braiding) -> bool {
    assert_eq!(br_h.xm, b.h, "source braiding lives on the source wing");
    assert_eq!(br_g.xm, b.g, "target braiding lives on the target wing");
    let e = &b.e;
    e.elements().all(|a| {
        e.elements().all(|bb| {
            let lhs = e.mul(
                b.kappa.apply(br_h.c(b.pi.apply(a), b.pi.apply(bb))),
                b.iota.apply(br_g.c(b.j.apply(a), b.j.apply(bb))),
            );
            let rhs = e.mul(e.mul(e.inv(bb), e.inv(a)), e.mul(bb, a));
            lhs == rhs
        })
    })
}

/// The braiding induced on the fraction [H1×G1 → E] of a braided butterfly:
/// ⟨a, b⟩ = (⟨π(a), π(b)⟩_H, ⟨ȷ(a), ȷ(b)⟩_G).
pub fn fraction_braiding(b: &Butterfly, br_h: &Braiding, br_g: &Braiding) -> Result<Braiding> {
    if !is_braided_butterfly(b, br_h, br_g) {
        return Err(Error::BraidingFails(vec![], "butterfly is not braided"));
    }
    let (exm, _, _) = fraction(b);
    let n1 = b.g.g1.order();
    let c: Vec<Vec<usize>> = b
        .e
        .elements()
        .map(|a| {
            b.e.elements()
                .map(|bb| {
                    pair_index(
                        br_h.c(b.pi.apply(a), b.pi.apply(bb)),
                        br_g.c(b.j.apply(a), b.j.apply(bb)),
                        n1,
                    )
                })
                .collect()
        })
        .collect();
    validate_braiding(&exm, &c)
}
