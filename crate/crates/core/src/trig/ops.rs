use std::collections::BTreeMap;

use super::{fourier_transform, inverse_transform, SampledFunction, TrigPoly, PRUNE_REL};
use crate::group::{Element, GroupModel, IrrepLabel};
use crate::linalg::{self, CMat, C64};
use crate::{Error, Result};

/// Pointwise product. Finite models multiply samples; SU(2), the circle and
/// their products expand each `alpha (x) beta` through its Clebsch-Gordan
/// blocks. A product reaching past the cutoff is a `CutoffOverflow`.
pub fn multiply(f: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly> {
    f.same_group(g)?;
    let group = f.group();
    if group.is_finite() {
        let (a, b) = (inverse_transform(f)?, inverse_transform(g)?);
        let values = a.values().iter().zip(b.values()).map(|(x, y)| x * y).collect();
        return fourier_transform(&SampledFunction::new(group, values)?);
    }
    if !supports_multiply(group) {
        return Err(Error::Unsupported(format!("pointwise product on mixed group {}", group.name())));
    }
    let (f, g) = (f.canonical()?, g.canonical()?);
    let mut out: BTreeMap<IrrepLabel, CMat> = BTreeMap::new();
    for (alpha, fa) in f.coeffs() {
        for (beta, gb) in g.coeffs() {
            let da = fa.nrows() as f64;
            let db = gb.nrows() as f64;
            let fg = linalg::kron(fa, gb);
            for (lambda, c) in group.tensor_decompose(alpha, beta)? {
                let dl = c.ncols() as f64;
                let h = c.transpose() * &fg * linalg::conj(&c) * C64::new(da * db / dl, 0.0);
                match out.get_mut(&lambda) {
                    Some(acc) => *acc += h,
                    None => {
                        out.insert(lambda, h);
                    }
                }
            }
        }
    }
    let scale = out.values().map(linalg::max_abs).fold(0.0, f64::max);
    out.retain(|_, m| linalg::max_abs(m) > PRUNE_REL * scale);
    for label in out.keys() {
        if group.irrep_dim(label).is_err() {
            return Err(Error::CutoffOverflow { needed: label.to_string(), cutoff: group.name() });
        }
    }
    Ok(TrigPoly::from_map(group, out))
}

/// Whether [`multiply`] handles `group`: finite models and products of
/// continuous factors, but not a mix of the two.
pub fn supports_multiply(group: &GroupModel) -> bool {
    group.is_finite() || !has_finite_factor(group)
}

fn has_finite_factor(group: &GroupModel) -> bool {
    match group {
        GroupModel::Finite(_) => true,
        GroupModel::Product(a, b) => has_finite_factor(a) || has_finite_factor(b),
        _ => false,
    }
}

/// `(f * g)(s) = integral f(t) g(t^-1 s) dt`, coefficientwise `f^ g^`.
pub fn convolve(f: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly> {
    f.same_group(g)?;
    let (f, g) = (f.canonical()?, g.canonical()?);
    let mut out = BTreeMap::new();
    for (label, fa) in f.coeffs() {
        if let Some(ga) = g.coeff(label) {
            out.insert(label.clone(), fa * ga);
        }
    }
    Ok(TrigPoly::from_map(f.group(), out).pruned())
}

/// `s -> f(s^-1)`, returned on canonical labels.
pub fn check_involution(f: &TrigPoly) -> Result<TrigPoly> {
    let coeffs = f.coeffs().iter().map(|(l, m)| (l.conj(), m.transpose())).collect();
    TrigPoly::from_map(f.group(), coeffs).canonical()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `t -> u(s^-1 t)`.
    Left,
    /// `t -> u(t s)`.
    Right,
}

pub fn translate(f: &TrigPoly, side: Side, s: &Element) -> Result<TrigPoly> {
    let group = f.group();
    let mut out = BTreeMap::new();
    for (label, c) in f.coeffs() {
        let pi = group.irrep_matrix(label, s)?;
        let m = match side {
            Side::Left => linalg::conj(&pi) * c,
            Side::Right => c * pi.transpose(),
        };
        out.insert(label.clone(), m);
    }
    Ok(TrigPoly::from_map(group, out))
}

/// The elementary tensor `(s, t) -> f(s) g(t)` on the product group, with
/// coefficient `f^(alpha) (x) g^(beta)` at `alpha x beta`.
pub fn tensor(f: &TrigPoly, g: &TrigPoly) -> TrigPoly {
    let group = GroupModel::product(f.group().clone(), g.group().clone());
    let mut out = BTreeMap::new();
    for (a, fa) in f.coeffs() {
        for (b, gb) in g.coeffs() {
            out.insert(IrrepLabel::pair(a.clone(), b.clone()), linalg::kron(fa, gb));
        }
    }
    TrigPoly::from_map(&group, out).pruned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Su2Element;
    use crate::trig::{evaluate, random_trig_poly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all(g: &GroupModel, seed: u64) -> TrigPoly {
        random_trig_poly(g, &g.enumerate_irreps(), seed, false).unwrap()
    }

    #[test]
    fn spin_half_square_lands_on_spin_one() {
        let g = GroupModel::su2(2);
        let p = TrigPoly::matrix_coefficient(&g, &IrrepLabel::spin(1), 0, 0).unwrap();
        let sq = multiply(&p, &p).unwrap();
        assert_eq!(sq.support().cloned().collect::<Vec<_>>(), vec![IrrepLabel::spin(2)]);
        // a^2 is the (0, 0) entry of spin one
        let want = TrigPoly::matrix_coefficient(&g, &IrrepLabel::spin(2), 0, 0).unwrap();
        assert!(sq.max_abs_diff(&want).unwrap() < 1e-14);
    }

    #[test]
    fn overflow_is_reported() {
        let g = GroupModel::su2(1);
        let p = TrigPoly::matrix_coefficient(&g, &IrrepLabel::spin(1), 0, 0).unwrap();
        assert!(matches!(multiply(&p, &p), Err(Error::CutoffOverflow { .. })));
    }

    #[test]
    fn mixed_products_are_unsupported() {
        let g = GroupModel::product(GroupModel::su2(2), GroupModel::named("z3", 0).unwrap());
        let f = TrigPoly::constant(&g, linalg::ONE);
        assert!(matches!(multiply(&f, &f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn continuous_products_agree_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for g in [
            GroupModel::su2(4),
            GroupModel::torus(4),
            GroupModel::product(GroupModel::su2(2), GroupModel::torus(2)),
        ] {
            let low: Vec<IrrepLabel> = g.enumerate_irreps().into_iter().filter(|l| g.label_degree(l) * 2 <= g.max_degree()).collect();
            let f = random_trig_poly(&g, &low, 1, false).unwrap();
            let h = random_trig_poly(&g, &low, 2, false).unwrap();
            let fh = multiply(&f, &h).unwrap();
            for _ in 0..5 {
                let s = g.random_element(&mut rng);
                let want = evaluate(&f, &s).unwrap() * evaluate(&h, &s).unwrap();
                assert!((evaluate(&fh, &s).unwrap() - want).norm() < 1e-11, "{}", g.name());
            }
        }
    }

    #[test]
    fn q8_coefficient_convolution() {
        let g = GroupModel::named("q8", 0).unwrap();
        let two = IrrepLabel::index(4);
        let p = |i, j| TrigPoly::matrix_coefficient(&g, &two, i, j).unwrap();
        // pi_ij * pi_kl = delta_jk pi_il / d
        assert!(convolve(&p(0, 1), &p(0, 1)).unwrap().is_zero());
        let got = convolve(&p(0, 1), &p(1, 0)).unwrap();
        let want = p(0, 0).scale(C64::new(0.5, 0.0));
        assert!(got.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn involution_and_translation_match_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for g in [GroupModel::su2(3), GroupModel::named("q8", 0).unwrap(), GroupModel::torus(3)] {
            let f = all(&g, 5);
            let inv = check_involution(&f).unwrap();
            assert!(inv.is_canonical());
            let s = g.random_element(&mut rng);
            let t = g.random_element(&mut rng);
            let fs_inv = evaluate(&f, &g.inverse(&t).unwrap()).unwrap();
            assert!((evaluate(&inv, &t).unwrap() - fs_inv).norm() < 1e-12);

            let left = translate(&f, Side::Left, &s).unwrap();
            let want = evaluate(&f, &g.multiply(&g.inverse(&s).unwrap(), &t).unwrap()).unwrap();
            assert!((evaluate(&left, &t).unwrap() - want).norm() < 1e-12);
            let right = translate(&f, Side::Right, &s).unwrap();
            let want = evaluate(&f, &g.multiply(&t, &s).unwrap()).unwrap();
            assert!((evaluate(&right, &t).unwrap() - want).norm() < 1e-12);
        }
    }

    #[test]
    fn elementary_tensor_evaluates_as_product() {
        let g = GroupModel::su2(2);
        let (f, h) = (all(&g, 1), all(&g, 2));
        let fh = tensor(&f, &h);
        let s = Element::Su2(Su2Element::from_ab(C64::new(0.6, 0.0), C64::new(0.0, 0.8)));
        let t = Element::Su2(Su2Element::torus(1.1));
        let want = evaluate(&f, &s).unwrap() * evaluate(&h, &t).unwrap();
        assert!((evaluate(&fh, &Element::pair(s, t)).unwrap() - want).norm() < 1e-12);
    }
}
