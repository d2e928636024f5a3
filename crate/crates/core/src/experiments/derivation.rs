use serde::Serialize;

use crate::group::{GroupModel, LabelName};
use crate::linalg::{C64, ZERO};
use crate::trig::{algebra_norm, evaluate, AlgebraNormKind, TrigPoly};
use crate::{Error, Result};

/// Step sizes of the forward-difference checks.
pub const FD_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

#[derive(Clone, Debug, Serialize)]
pub struct FiniteDifference {
    pub h: f64,
    pub estimate: [f64; 2],
    pub error: f64,
    /// Taylor bound `h/2 sup|f''|` plus a rounding allowance.
    pub allowed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationReport {
    /// `d(f)` as `[re, im]`.
    pub value: [f64; 2],
    /// The `ADelta(2)` norm.
    pub bound: f64,
    pub finite_differences: Vec<FiniteDifference>,
}

impl DerivationReport {
    pub fn value(&self) -> C64 {
        C64::new(self.value[0], self.value[1])
    }

    pub fn within_bound(&self, slack: f64) -> bool {
        self.value().norm() <= self.bound + slack
    }

    pub fn first_order(&self) -> bool {
        self.finite_differences.iter().all(|fd| fd.error <= fd.allowed)
    }
}

/// `theta -> f(diag(e^{i theta}, e^{-i theta}))` as `(weight, coefficient)`
/// pairs, merged by weight. Only diagonal entries contribute since the torus
/// acts diagonally in the weight basis.
pub fn torus_profile(f: &TrigPoly) -> Result<Vec<(i64, C64)>> {
    if !matches!(f.group(), GroupModel::Su2 { .. }) {
        return Err(Error::KindMismatch("su2"));
    }
    let f = f.canonical()?;
    let mut profile = std::collections::BTreeMap::new();
    for (label, c) in f.coeffs() {
        let LabelName::Spin(tj) = label.name else { return Err(Error::KindMismatch("su2")) };
        let d = c.nrows() as f64;
        for k in 0..c.nrows() {
            let n = tj as i64 - 2 * k as i64;
            *profile.entry(n).or_insert(ZERO) += c[(k, k)] * d;
        }
    }
    Ok(profile.into_iter().collect())
}

/// `d(f) = d/dtheta f(t_theta)` at 0, with the `ADelta(2)` bound and
/// forward differences at [`FD_STEPS`].
pub fn point_derivation(f: &TrigPoly) -> Result<DerivationReport> {
    let profile = torus_profile(f)?;
    let value: C64 = profile.iter().map(|(n, c)| c * C64::new(0.0, *n as f64)).sum();
    let second: f64 = profile.iter().map(|(n, c)| (n * n) as f64 * c.norm()).sum();
    let size: f64 = profile.iter().map(|(_, c)| c.norm()).sum();
    let group = f.group();
    let at_e = evaluate(f, &group.identity())?;
    let finite_differences = FD_STEPS
        .iter()
        .map(|&h| {
            let est = (evaluate(f, &group.torus_element(h)?)? - at_e) / h;
            Ok(FiniteDifference {
                h,
                estimate: [est.re, est.im],
                error: (est - value).norm(),
                allowed: 0.5 * second * h + 16.0 * f64::EPSILON * size / h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivationReport {
        value: [value.re, value.im],
        bound: algebra_norm(f, AlgebraNormKind::ADelta(2))?,
        finite_differences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::IrrepLabel;
    use crate::linalg::ONE;
    use crate::trig::{multiply, random_trig_poly};

    #[test]
    fn constants_and_spin_half() {
        let g = GroupModel::su2(4);
        let c = point_derivation(&TrigPoly::constant(&g, C64::new(3.0, 1.0))).unwrap();
        assert_eq!(c.value(), ZERO);
        let p = TrigPoly::matrix_coefficient(&g, &IrrepLabel::spin(1), 0, 0).unwrap();
        let r = point_derivation(&p).unwrap();
        assert!((r.value() - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(r.within_bound(1e-12) && r.first_order());
        assert!(point_derivation(&TrigPoly::constant(&GroupModel::torus(2), ONE)).is_err());
    }

    #[test]
    fn leibniz_rule() {
        let g = GroupModel::su2(4);
        let low: Vec<IrrepLabel> = (0..=2).map(IrrepLabel::spin).collect();
        for seed in 0..10 {
            let f = random_trig_poly(&g, &low, seed, false).unwrap();
            let h = random_trig_poly(&g, &low, seed + 100, false).unwrap();
            let e = g.identity();
            let d = |p: &TrigPoly| point_derivation(p).unwrap().value();
            let lhs = d(&multiply(&f, &h).unwrap());
            let rhs = evaluate(&f, &e).unwrap() * d(&h) + evaluate(&h, &e).unwrap() * d(&f);
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn bound_holds_on_random_polys() {
        let g = GroupModel::su2(6);
        for seed in 0..20 {
            let f = random_trig_poly(&g, &g.enumerate_irreps(), seed, false).unwrap();
            let r = point_derivation(&f).unwrap();
            assert!(r.within_bound(1e-10));
            assert!(r.first_order(), "{:?}", r.finite_differences);
        }
    }
}
