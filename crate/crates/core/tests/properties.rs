use cfourier_core::coset::{gamma_conv, gamma_twisted, lift_n, lift_n_check, rank1_projector, swap_unitary, CosetSpace};
use cfourier_core::experiments::SubspaceBasis;
use cfourier_core::group::subgroup::all_subgroups;
use cfourier_core::group::{Element, GroupModel, IrrepLabel, Su2Element, SubgroupModel};
use cfourier_core::linalg::{self, CMat, C64};
use cfourier_core::trig::{
    algebra_norm, multiply, random_sampled, random_trig_poly, schatten_norm, translate, AlgebraNormKind, Schatten,
    Side, TrigPoly,
};
use proptest::prelude::*;

const FINITE: [&str; 7] = ["z2", "z5", "z6", "z12", "s3", "d4", "q8"];

fn finite(i: usize) -> GroupModel {
    GroupModel::named(FINITE[i % FINITE.len()], 0).unwrap()
}

/// Finite groups, SU(2), the circle and a few products.
fn any_group(i: usize) -> GroupModel {
    match i % 10 {
        0..=6 => finite(i),
        7 => GroupModel::su2(3),
        8 => GroupModel::torus(3),
        _ => GroupModel::named("su2xtorus", 2).unwrap(),
    }
}

fn su2_element() -> impl Strategy<Value = Su2Element> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("nonzero", |(a, b, c, d)| a * a + b * b + c * c + d * d > 1e-3)
        .prop_map(|(a, b, c, d)| Su2Element::from_ab(C64::new(a, b), C64::new(c, d)))
}

fn random_poly(g: &GroupModel, seed: u64) -> TrigPoly {
    random_trig_poly(g, &g.enumerate_irreps(), seed, false).unwrap()
}

fn low_labels(g: &GroupModel, max: u32) -> Vec<IrrepLabel> {
    g.enumerate_irreps().into_iter().filter(|l| g.label_degree(l) <= max).collect()
}

fn square(d: usize, entries: &[(f64, f64)]) -> CMat {
    CMat::from_fn(d, d, |i, j| {
        let (re, im) = entries[(i * d + j) % entries.len()];
        C64::new(re, im)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_tables_are_group_laws(gi in 0usize..7, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let g = finite(gi);
        let n = g.order().unwrap();
        let (a, b, c) = (Element::Finite(a % n), Element::Finite(b % n), Element::Finite(c % n));
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(g.multiply(&a, &g.identity()).unwrap(), a.clone());
        prop_assert_eq!(g.multiply(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
    }

    #[test]
    fn finite_irreps_are_unitary_homomorphisms(gi in 0usize..7, a in 0usize..64, b in 0usize..64) {
        let g = finite(gi);
        let n = g.order().unwrap();
        let (a, b) = (Element::Finite(a % n), Element::Finite(b % n));
        let ab = g.multiply(&a, &b).unwrap();
        for l in g.enumerate_irreps() {
            let pa = g.irrep_matrix(&l, &a).unwrap();
            let pb = g.irrep_matrix(&l, &b).unwrap();
            prop_assert!(linalg::is_unitary(&pa, 1e-12));
            prop_assert!(linalg::max_abs_diff(&g.irrep_matrix(&l, &ab).unwrap(), &(&pa * &pb)) <= 1e-12);
        }
    }

    #[test]
    fn su2_irreps_are_unitary_homomorphisms(a in su2_element(), b in su2_element()) {
        let g = GroupModel::su2(6);
        let m = a.to_cmat();
        prop_assert!(linalg::is_unitary(&m, 1e-12));
        prop_assert!((m.determinant() - C64::new(1.0, 0.0)).norm() <= 1e-12);
        let (ea, eb) = (Element::Su2(a), Element::Su2(b));
        let ab = g.multiply(&ea, &eb).unwrap();
        for l in g.enumerate_irreps() {
            let pa = g.irrep_matrix(&l, &ea).unwrap();
            let pb = g.irrep_matrix(&l, &eb).unwrap();
            prop_assert!(linalg::is_unitary(&pa, 1e-12));
            prop_assert!(linalg::max_abs_diff(&g.irrep_matrix(&l, &ab).unwrap(), &(&pa * &pb)) <= 1e-12);
        }
    }

    #[test]
    fn conjugating_a_label_twice_is_the_identity(gi in 0usize..10) {
        let g = any_group(gi);
        for l in g.enumerate_irreps() {
            prop_assert_eq!(l.conj().conj(), l.clone());
            prop_assert!(l.is_canonical());
            prop_assert_eq!(g.irrep_dim(&l.conj()).unwrap(), g.irrep_dim(&l).unwrap());
        }
    }

    #[test]
    fn trig_polys_keep_their_shape_invariants(gi in 0usize..10, seed in any::<u64>()) {
        let g = any_group(gi);
        let f = random_poly(&g, seed);
        let labels = g.enumerate_irreps();
        for (l, m) in f.coeffs() {
            let d = g.irrep_dim(l).unwrap();
            prop_assert_eq!((m.nrows(), m.ncols()), (d, d));
            prop_assert!(linalg::max_abs(m) > 0.0);
            prop_assert!(labels.contains(l) || labels.contains(&l.conj()));
        }
        let zero = f.sub(&f).unwrap();
        prop_assert!(zero.is_zero());
        for kind in [AlgebraNormKind::A, AlgebraNormKind::ADelta(1), AlgebraNormKind::AGamma] {
            prop_assert_eq!(algebra_norm(&zero, kind).unwrap(), 0.0);
        }
    }

    #[test]
    fn schatten_sandwich(d in 1usize..=8, entries in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..64)) {
        let m = square(d, &entries);
        let (one, two) = (schatten_norm(&m, Schatten::One), schatten_norm(&m, Schatten::Two));
        let slack = 1e-12 * one.max(1.0);
        prop_assert!(one / (d as f64).sqrt() <= two + slack);
        prop_assert!(two <= one + slack);
        prop_assert!(schatten_norm(&m, Schatten::Inf) <= two + slack);
    }

    #[test]
    fn norm_chain(gi in 0usize..10, seed in any::<u64>()) {
        let g = any_group(gi);
        let f = random_poly(&g, seed);
        let n = |k| algebra_norm(&f, k).unwrap();
        let chain = [
            n(AlgebraNormKind::A),
            n(AlgebraNormKind::ADelta(1)),
            n(AlgebraNormKind::AGamma),
            n(AlgebraNormKind::ADelta(2)),
            n(AlgebraNormKind::ADelta(3)),
            n(AlgebraNormKind::ADelta(5)),
        ];
        for w in chain.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-12), "{:?}", chain);
        }
    }

    #[test]
    fn multiply_is_commutative_and_associative(gi in 0usize..10, seed in any::<u64>()) {
        let g = match any_group(gi) {
            GroupModel::Su2 { .. } => GroupModel::su2(6),
            GroupModel::Torus { .. } => GroupModel::torus(6),
            GroupModel::Product(..) => GroupModel::named("su2xtorus", 6).unwrap(),
            other => other,
        };
        let low = low_labels(&g, 2);
        let p = |s| random_trig_poly(&g, &low, s, false).unwrap();
        let (a, b, c) = (p(seed), p(seed ^ 1), p(seed ^ 2));
        let ab = multiply(&a, &b).unwrap();
        prop_assert!(ab.max_abs_diff(&multiply(&b, &a).unwrap()).unwrap() <= 1e-10);
        let left = multiply(&ab, &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-10);
    }

    #[test]
    fn norms_are_translation_invariant(gi in 0usize..10, seed in any::<u64>(), left in any::<bool>()) {
        let g = any_group(gi);
        let f = random_poly(&g, seed);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let s = g.random_element(&mut rng);
        let side = if left { Side::Left } else { Side::Right };
        let t = translate(&f, side, &s).unwrap();
        for kind in [AlgebraNormKind::A, AlgebraNormKind::ADelta(1), AlgebraNormKind::ADelta(2), AlgebraNormKind::AGamma] {
            let (a, b) = (algebra_norm(&f, kind).unwrap(), algebra_norm(&t, kind).unwrap());
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }
    }

    #[test]
    fn coset_maps_invert(gi in 0usize..10, seed in any::<u64>()) {
        let g = any_group(gi);
        let f = random_poly(&g, seed);
        let nf = lift_n(&f).unwrap();
        prop_assert!(gamma_twisted(&nf).unwrap().max_abs_diff(&f).unwrap() <= 1e-10);
        prop_assert!(gamma_conv(&lift_n_check(&f).unwrap()).unwrap().max_abs_diff(&f).unwrap() <= 1e-10);
        // blocks sit on conjugate pairs only
        for l in nf.canonical().unwrap().coeffs().keys() {
            let (a, b) = l.factors().unwrap();
            let (a0, _) = g.canonical_form(a).unwrap();
            let (b0, _) = g.canonical_form(b).unwrap();
            let (abar, _) = g.canonical_form(&a0.conj()).unwrap();
            prop_assert_eq!(abar, b0);
        }
    }

    #[test]
    fn coset_representatives_and_projection(gi in 0usize..7, seed in any::<u64>()) {
        let g = finite(gi);
        let values = random_sampled(&g, seed).unwrap();
        for members in all_subgroups(&g).unwrap() {
            let k = SubgroupModel::finite(&g, members.clone()).unwrap();
            // closure
            for &a in &members {
                for &b in &members {
                    let ab = g.multiply(&Element::Finite(a), &g.inverse(&Element::Finite(b)).unwrap()).unwrap();
                    prop_assert!(members.contains(&g.element_index(&ab).unwrap()));
                }
            }
            let space = CosetSpace::new(&k).unwrap();
            let mut hits = vec![0; space.num_cosets()];
            for &r in space.representatives() {
                hits[space.coset_of(r)] += 1;
            }
            prop_assert!(hits.iter().all(|&h| h == 1));
            let p = space.project_p(values.values()).unwrap();
            let pp = space.project_p(&p).unwrap();
            prop_assert!(p.iter().zip(&pp).all(|(x, y)| (x - y).norm() <= 1e-12));
        }
    }

    #[test]
    fn subspace_bases_are_orthonormal(n in 1usize..12, k in 1usize..16, entries in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..200)) {
        let spanning = CMat::from_fn(n, k, |i, j| {
            // repeated entries make many spanning sets rank deficient
            let (re, im) = entries[(i * 7 + j * 3) % entries.len()];
            C64::new(re, im)
        });
        let b = SubspaceBasis::from_spanning(&spanning, "random");
        prop_assert!(b.dim() <= n.min(k));
        let gram = b.vectors().adjoint() * b.vectors();
        prop_assert!(linalg::max_abs_diff(&gram, &linalg::identity(b.dim())) <= 1e-12);
        let back = SubspaceBasis::from_spanning(b.vectors(), "again");
        prop_assert_eq!(back.dim(), b.dim());
    }
}

#[test]
fn dimension_squares_sum_to_the_order() {
    for name in ["z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9", "z10", "z11", "z12", "s3", "d4", "q8"] {
        let g = GroupModel::named(name, 0).unwrap();
        let total: usize = g.enumerate_irreps().iter().map(|l| g.irrep_dim(l).unwrap().pow(2)).sum();
        assert_eq!(total, g.order().unwrap(), "{name}");
    }
}

#[test]
fn projector_and_swap_laws() {
    for d in 1..=6 {
        let p = rank1_projector(d);
        assert!(linalg::max_abs_diff(&(&p.matrix * &p.matrix), &p.matrix) <= 1e-12);
        assert!((p.matrix.trace() - C64::new(1.0, 0.0)).norm() <= 1e-12);
        assert!((p.eta.iter().map(|x| x.norm_sqr()).sum::<f64>() - 1.0).abs() <= 1e-12);
        let u = swap_unitary(d).matrix;
        assert!(u.iter().all(|x| *x == C64::new(0.0, 0.0) || *x == C64::new(1.0, 0.0)));
        assert!(u.row_iter().all(|r| r.iter().filter(|x| x.re == 1.0).count() == 1));
        assert_eq!(&u * &u, linalg::identity(d * d));
    }
}

#[test]
fn adelta_needs_a_positive_exponent() {
    assert!(AlgebraNormKind::adelta(0).is_err());
    assert!("adelta:0".parse::<AlgebraNormKind>().is_err());
    assert!(AlgebraNormKind::adelta(3).is_ok());
}
