//! Coefficient forms of the coset maps for the diagonal in `G x G`.
//!
//! `Nf(s, t) = f(s t^-1)` lives on labels `alpha x conj(alpha)` with block
//! `[f^(alpha) (x) I] P1`, where `P1` projects onto
//! `eta = d^-1/2 sum_k e_k (x) e_k`. `Gamma` contracts a block against `eta`
//! and annihilates every other pair. The untwisted variants use
//! `Nf(s, t) = f(st)` on `alpha x alpha` with block `[f^(alpha) (x) I] U / d`,
//! `U` the swap of tensor factors.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::group::{GroupModel, IrrepLabel};
use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::trig::{schatten_norm, Schatten, TrigPoly};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Rank1Projector {
    pub dim: usize,
    pub eta: Vec<C64>,
    pub matrix: CMat,
}

pub fn rank1_projector(d: usize) -> Rank1Projector {
    let s = 1.0 / (d as f64).sqrt();
    let eta: Vec<C64> = (0..d * d).map(|x| if x % (d + 1) == 0 { C64::new(s, 0.0) } else { ZERO }).collect();
    let matrix = linalg::rank_one(&eta, &eta);
    Rank1Projector { dim: d, eta, matrix }
}

#[derive(Clone, Debug)]
pub struct SwapUnitary {
    pub dim: usize,
    pub matrix: CMat,
}

/// `U_{(i,j),(k,l)} = delta_il delta_jk`.
pub fn swap_unitary(d: usize) -> SwapUnitary {
    let matrix = CMat::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        if i == l && j == k { ONE } else { ZERO }
    });
    SwapUnitary { dim: d, matrix }
}

/// `integral pi(t) (x) conj(pi(t)) dt` by the model's quadrature.
pub fn haar_tensor_integral(group: &GroupModel, label: &IrrepLabel) -> Result<CMat> {
    let d = group.irrep_dim(label)?;
    let mut acc = CMat::zeros(d * d, d * d);
    for (t, w) in group.quadrature(2 * group.label_degree(label)) {
        let m = group.irrep_matrix(label, &t)?;
        acc += linalg::kron(&m, &linalg::conj(&m)) * C64::new(w, 0.0);
    }
    Ok(acc)
}

/// `d * integral pi(t^-1) (x) pi(t) dt` by the model's quadrature.
pub fn haar_swap_integral(group: &GroupModel, label: &IrrepLabel) -> Result<CMat> {
    let d = group.irrep_dim(label)?;
    let mut acc = CMat::zeros(d * d, d * d);
    for (t, w) in group.quadrature(2 * group.label_degree(label)) {
        let m = group.irrep_matrix(label, &t)?;
        let m_inv = group.irrep_matrix(label, &group.inverse(&t)?)?;
        acc += linalg::kron(&m_inv, &m) * C64::new(w * d as f64, 0.0);
    }
    Ok(acc)
}

/// The factor `G` of a model `G x G`.
fn diagonal_factor(group: &GroupModel) -> Result<&GroupModel> {
    match group.factors() {
        Some((a, b)) if a == b => Ok(a),
        _ => Err(Error::InvalidGroup(format!("expected a model G x G, got {}", group.name()))),
    }
}

/// `Nf(s, t) = f(s t^-1)` as a polynomial on `G x G`.
pub fn lift_n(f: &TrigPoly) -> Result<TrigPoly> {
    let g2 = f.group().squared();
    let mut blocks = Vec::with_capacity(f.coeffs().len());
    for (alpha, c) in f.coeffs() {
        let d = c.nrows();
        let p1 = rank1_projector(d).matrix;
        blocks.push((IrrepLabel::pair(alpha.clone(), alpha.conj()), linalg::kron(c, &linalg::identity(d)) * p1));
    }
    TrigPoly::new(&g2, blocks)
}

/// `Ncheck f(s, t) = f(st)` as a polynomial on `G x G`.
pub fn lift_n_check(f: &TrigPoly) -> Result<TrigPoly> {
    let g2 = f.group().squared();
    let mut blocks = Vec::with_capacity(f.coeffs().len());
    for (alpha, c) in f.coeffs() {
        let d = c.nrows();
        let u = swap_unitary(d).matrix;
        let block = linalg::kron(c, &linalg::identity(d)) * u / C64::new(d as f64, 0.0);
        blocks.push((IrrepLabel::pair(alpha.clone(), alpha.clone()), block));
    }
    TrigPoly::new(&g2, blocks)
}

fn accumulate(out: &mut BTreeMap<IrrepLabel, CMat>, label: IrrepLabel, m: CMat) {
    match out.get_mut(&label) {
        Some(acc) => *acc += m,
        None => {
            out.insert(label, m);
        }
    }
}

/// `Gamma w(s) = integral w(st, t) dt`; sends `f x g` to `f * g(.^-1)`.
pub fn gamma_twisted(w: &TrigPoly) -> Result<TrigPoly> {
    let g = diagonal_factor(w.group())?;
    let mut out = BTreeMap::new();
    for (label, c) in w.coeffs() {
        let (a, b) = label.factors().ok_or(Error::KindMismatch("pair"))?;
        let (a0, va) = g.canonical_form(a)?;
        let (b0, vb) = g.canonical_form(b)?;
        let (sigma, wm) = g.canonical_form(&a0.conj())?;
        if b0 != sigma {
            continue;
        }
        // b = U conj(a0) U^* with U = Vb W^*
        let v = linalg::kron(&va, &(vb * wm.adjoint()));
        let c2 = v.transpose() * c * linalg::conj(&v);
        let d = va.nrows();
        let block = CMat::from_fn(d, d, |i, k| (0..d).map(|j| c2[(i * d + k, j * d + j)]).sum());
        accumulate(&mut out, a0, block);
    }
    Ok(TrigPoly::new(g, out)?.pruned())
}

/// `Gamma-check w(s) = integral w(t, t^-1 s) dt`; sends `f x g` to `f * g`.
pub fn gamma_conv(w: &TrigPoly) -> Result<TrigPoly> {
    let g = diagonal_factor(w.group())?;
    let mut out = BTreeMap::new();
    for (label, c) in w.coeffs() {
        let (a, b) = label.factors().ok_or(Error::KindMismatch("pair"))?;
        let (a0, va) = g.canonical_form(a)?;
        let (b0, vb) = g.canonical_form(b)?;
        if a0 != b0 {
            continue;
        }
        let v = linalg::kron(&va, &vb);
        let c2 = v.transpose() * c * linalg::conj(&v);
        let d = va.nrows();
        let block = CMat::from_fn(d, d, |i, l| (0..d).map(|k| c2[(i * d + k, k * d + l)]).sum());
        accumulate(&mut out, a0, block);
    }
    Ok(TrigPoly::new(g, out)?.pruned())
}

#[derive(Clone, Debug, Serialize)]
pub struct TnormRow {
    pub label: IrrepLabel,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Compares the Schatten `p`-norm of the lifted block at `alpha x conj(alpha)`
/// with `||f^(alpha)||_2 / sqrt(d)`, for every canonical label in range.
pub fn tnorm_identity_check(f: &TrigPoly, p: Schatten) -> Result<Vec<TnormRow>> {
    let f = f.canonical()?;
    let lifted = lift_n(&f)?;
    let group = f.group();
    let mut rows = Vec::new();
    for label in group.enumerate_irreps() {
        let d = group.irrep_dim(&label)?;
        let lhs = lifted
            .coeff(&IrrepLabel::pair(label.clone(), label.conj()))
            .map_or(0.0, |m| schatten_norm(m, p));
        let rhs = f.coeff(&label).map_or(0.0, linalg::frobenius) / (d as f64).sqrt();
        rows.push(TnormRow { label, lhs, rhs, residual: (lhs - rhs).abs() });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Element;
    use crate::trig::{
        algebra_norm, check_involution, convolve, evaluate, inverse_transform, random_trig_poly, tensor,
        AlgebraNormKind,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_full(g: &GroupModel, seed: u64) -> TrigPoly {
        random_trig_poly(g, &g.enumerate_irreps(), seed, false).unwrap()
    }

    #[test]
    fn projector_and_swap_laws() {
        assert_eq!(rank1_projector(1).matrix, linalg::identity(1));
        assert_eq!(swap_unitary(1).matrix, linalg::identity(1));
        let p = rank1_projector(2).matrix;
        assert!((p.trace() - ONE).norm() < 1e-14);
        assert!(linalg::max_abs_diff(&(&p * &p), &p) < 1e-14);
        for d in 1..=8 {
            let u = swap_unitary(d).matrix;
            assert_eq!(&u * &u, linalg::identity(d * d));
        }
    }

    #[test]
    fn q8_group_sums() {
        let g = GroupModel::named("q8", 0).unwrap();
        let two = IrrepLabel::index(4);
        assert!(linalg::max_abs_diff(&haar_tensor_integral(&g, &two).unwrap(), &rank1_projector(2).matrix) <= 1e-12);
        assert!(linalg::max_abs_diff(&haar_swap_integral(&g, &two).unwrap(), &swap_unitary(2).matrix) <= 1e-12);
    }

    #[test]
    fn su2_quadrature_integrals() {
        let g = GroupModel::su2(3);
        for tj in 0..=3 {
            let l = IrrepLabel::spin(tj);
            let d = tj as usize + 1;
            assert!(linalg::max_abs_diff(&haar_tensor_integral(&g, &l).unwrap(), &rank1_projector(d).matrix) <= 1e-12);
            assert!(linalg::max_abs_diff(&haar_swap_integral(&g, &l).unwrap(), &swap_unitary(d).matrix) <= 1e-12);
        }
    }

    #[test]
    fn z2_character_examples() {
        let g = GroupModel::named("z2", 0).unwrap();
        let chi = TrigPoly::character(&g, &IrrepLabel::index(1)).unwrap();
        let chi2 = tensor(&chi, &chi);
        assert!(lift_n(&chi).unwrap().max_abs_diff(&chi2).unwrap() < 1e-15);
        assert!(lift_n_check(&chi).unwrap().max_abs_diff(&chi2).unwrap() < 1e-15);
        assert!(gamma_twisted(&chi2).unwrap().max_abs_diff(&chi).unwrap() < 1e-15);
        assert!(gamma_conv(&chi2).unwrap().max_abs_diff(&chi).unwrap() < 1e-15);
        let one = TrigPoly::constant(&g, ONE);
        assert!(lift_n(&one).unwrap().max_abs_diff(&TrigPoly::constant(&g.squared(), ONE)).unwrap() < 1e-15);
    }

    #[test]
    fn lifts_match_pointwise_on_finite_groups() {
        for name in ["s3", "q8", "z5"] {
            let g = GroupModel::named(name, 0).unwrap();
            let f = random_full(&g, 7);
            let fs = inverse_transform(&f).unwrap();
            let n = g.order().unwrap();
            let elements = g.elements().unwrap();
            let nf = inverse_transform(&lift_n(&f).unwrap()).unwrap();
            let nf_check = inverse_transform(&lift_n_check(&f).unwrap()).unwrap();
            for (si, s) in elements.iter().enumerate() {
                for (ti, t) in elements.iter().enumerate() {
                    let st_inv = g.element_index(&g.multiply(s, &g.inverse(t).unwrap()).unwrap()).unwrap();
                    let st = g.element_index(&g.multiply(s, t).unwrap()).unwrap();
                    assert!((nf.values()[si * n + ti] - fs.values()[st_inv]).norm() < 1e-12);
                    assert!((nf_check.values()[si * n + ti] - fs.values()[st]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn lifts_match_pointwise_on_su2() {
        let g = GroupModel::su2(3);
        let f = random_full(&g, 3);
        let (nf, nfc) = (lift_n(&f).unwrap(), lift_n_check(&f).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let (s, t) = (g.random_element(&mut rng), g.random_element(&mut rng));
            let st_inv = g.multiply(&s, &g.inverse(&t).unwrap()).unwrap();
            let st = g.multiply(&s, &t).unwrap();
            let pair = Element::pair(s, t);
            assert!((evaluate(&nf, &pair).unwrap() - evaluate(&f, &st_inv).unwrap()).norm() < 1e-11);
            assert!((evaluate(&nfc, &pair).unwrap() - evaluate(&f, &st).unwrap()).norm() < 1e-11);
        }
    }

    #[test]
    fn gamma_inverts_lifts_and_twists_elementary_tensors() {
        for g in [GroupModel::named("s3", 0).unwrap(), GroupModel::named("z4", 0).unwrap(), GroupModel::su2(3)] {
            let (f, h) = (random_full(&g, 1), random_full(&g, 2));
            assert!(gamma_twisted(&lift_n(&f).unwrap()).unwrap().max_abs_diff(&f).unwrap() < 1e-12);
            assert!(gamma_conv(&lift_n_check(&f).unwrap()).unwrap().max_abs_diff(&f).unwrap() < 1e-12);
            let fh = tensor(&f, &h);
            let twisted = convolve(&f, &check_involution(&h).unwrap()).unwrap();
            assert!(gamma_twisted(&fh).unwrap().max_abs_diff(&twisted).unwrap() < 1e-12);
            assert!(gamma_conv(&fh).unwrap().max_abs_diff(&convolve(&f, &h).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn lift_norm_is_adelta_norm() {
        let g = GroupModel::su2(4);
        let f = random_full(&g, 5);
        let lhs = algebra_norm(&lift_n(&f).unwrap(), AlgebraNormKind::A).unwrap();
        let rhs = algebra_norm(&f, AlgebraNormKind::ADelta(1)).unwrap();
        assert!((lhs - rhs).abs() <= 1e-10 * rhs);
    }

    #[test]
    fn tnorm_rows() {
        let g = GroupModel::su2(2);
        assert!(tnorm_identity_check(&TrigPoly::zero(&g), Schatten::One).unwrap().iter().all(|r| r.residual == 0.0));
        let p = TrigPoly::matrix_coefficient(&g, &IrrepLabel::spin(1), 0, 0).unwrap();
        for norm in Schatten::ALL {
            let rows = tnorm_identity_check(&p, norm).unwrap();
            let half = rows.iter().find(|r| r.label == IrrepLabel::spin(1)).unwrap();
            let want = 0.5 / 2f64.sqrt();
            assert!((half.lhs - want).abs() < 1e-15 && (half.rhs - want).abs() < 1e-15);
        }
    }
}
