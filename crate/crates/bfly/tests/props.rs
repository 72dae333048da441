//! Property tests over randomly chosen elements, fixtures, and search
//! results: algebraic identities that must hold pointwise everywhere.

use bfly::butterfly::{from_strict, to_strict};
use bfly::doc::{parse_document, render_document, GroupDoc, Payload, XmodDoc};
use bfly::group::{direct_product, enumerate_homs, pair_index, unpair_index, FiniteGroup};
use bfly::oracle::enumerate_butterflies;
use bfly::xmod::CrossedModule;
use bfly::{samples, Budget};
use proptest::prelude::*;

fn sample_group(i: usize) -> FiniteGroup {
    match i % 6 {
        0 => samples::z(2),
        1 => samples::z(3),
        2 => samples::z(4),
        3 => samples::v4(),
        4 => samples::s3(),
        _ => direct_product(&samples::z(2), &samples::z(3)),
    }
}

fn sample_xmod(i: usize) -> CrossedModule {
    samples::all_xmods().swap_remove(i % 6).1
}

proptest! {
    #[test]
    fn group_inverse_antihomomorphism(gi in 0usize..6, a in 0usize..36, b in 0usize..36) {
        let g = sample_group(gi);
        let (a, b) = (a % g.order(), b % g.order());
        prop_assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.id());
        prop_assert_eq!(g.order() % g.element_order(a), 0); // Lagrange
    }

    #[test]
    fn pairing_round_trips(i in 0usize..100, j in 0usize..100) {
        let n = j + 1;
        let k = pair_index(i, j % n, n);
        prop_assert_eq!(unpair_index(k, n), (i, j % n));
    }

    #[test]
    fn crossed_module_axioms_pointwise(xi in 0usize..6, g in 0usize..24, h in 0usize..24, x in 0usize..24) {
        let xm = sample_xmod(xi);
        let g = g % xm.g1.order();
        let h = h % xm.g1.order();
        let x = x % xm.g0.order();
        // equivariance and Peiffer, spot-checked at random points
        prop_assert_eq!(xm.d(xm.act(g, x)), xm.g0.conj(xm.d(g), x));
        prop_assert_eq!(xm.act(g, xm.d(h)), xm.g1.conj(g, h));
        // the action is a right action by automorphisms
        prop_assert_eq!(xm.act(xm.g1.mul(g, h), x), xm.g1.mul(xm.act(g, x), xm.act(h, x)));
    }

    #[test]
    fn realized_groupoid_interchange(xi in 0usize..6, seed in 0usize..10_000) {
        let xm = sample_xmod(xi);
        let gr = xm.realize();
        let (n0, n1) = (xm.g0.order(), xm.g1.order());
        let pick = |s: usize| ((s / n1) % n0, s % n1);
        let a = pick(seed);
        let b = pick(seed / 7 + 1);
        // tensor of composable pairs equals composition of tensors
        let a2 = (gr.target(a), seed % n1);
        let b2 = (gr.target(b), (seed / 3) % n1);
        let lhs = gr.compose(gr.tensor(a, b), gr.tensor(a2, b2));
        let rhs = gr.tensor(gr.compose(a, a2), gr.compose(b, b2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strict_morphisms_round_trip_through_butterflies(hi in 0usize..3, seed in 0usize..64) {
        let budget = Budget::default();
        let (h, g) = match hi {
            0 => (samples::xm_z2_z2_zero(), samples::xm_z2_z2_zero()),
            1 => (samples::xm_z2_z4(), samples::xm_z4_z2()),
            _ => (samples::xm_disc_z2(), samples::xm_bz2()),
        };
        let mut strict = Vec::new();
        for f1 in enumerate_homs(&h.g1, &g.g1, &budget).unwrap() {
            for f0 in enumerate_homs(&h.g0, &g.g0, &budget).unwrap() {
                if let Ok(m) = bfly::xmod::validate_strict(&h, &g, &f1, &f0) {
                    strict.push(m);
                }
            }
        }
        prop_assume!(!strict.is_empty());
        let m = &strict[seed % strict.len()];
        let b = from_strict(m);
        let sections = b.find_sections(&budget).unwrap();
        prop_assert!(!sections.is_empty(), "split butterflies admit a section");
        // the canonical section of the semidirect center recovers m exactly
        let canonical = sections
            .iter()
            .find(|s| to_strict(&b, s).ok().as_ref() == Some(m));
        prop_assert!(canonical.is_some());
    }

    #[test]
    fn butterfly_isomorphism_is_an_equivalence_relation(seed in 0usize..32) {
        let budget = Budget::default();
        let xm = samples::xm_z2_z2_zero();
        let reps = enumerate_butterflies(&xm, &xm, &budget).unwrap().representatives;
        let a = &reps[seed % reps.len()];
        let b = &reps[(seed / reps.len()) % reps.len()];
        // reflexive, and symmetric across distinct class representatives
        prop_assert!(bfly::butterfly::find_butterfly_isomorphism(a, a, &budget).unwrap().is_some());
        let ab = bfly::butterfly::find_butterfly_isomorphism(a, b, &budget).unwrap().is_some();
        let ba = bfly::butterfly::find_butterfly_isomorphism(b, a, &budget).unwrap().is_some();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn documents_round_trip(gi in 0usize..6, label in "[a-zA-Z0-9 _-]{0,12}") {
        let mut g = sample_group(gi);
        g.label = if label.is_empty() { None } else { Some(label) };
        let p = Payload::Group(GroupDoc::of(&g));
        prop_assert_eq!(parse_document(&render_document(&p)).unwrap(), p);
        let xi = gi; // reuse the index for a crossed module document
        let xp = Payload::Xmod(XmodDoc::of(&sample_xmod(xi)));
        prop_assert_eq!(parse_document(&render_document(&xp)).unwrap(), xp);
    }
}
