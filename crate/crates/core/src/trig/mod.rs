//! Trigonometric polynomials stored as Fourier coefficient families.
//!
//! The transform convention is `f^(pi) = integral of f(s) conj(pi(s)) ds`
//! with inverse `f(s) = sum_pi d_pi trace[f^(pi) pi(s)^T]`. Under it,
//! convolution `(f * g)(s) = integral f(t) g(t^-1 s) dt` is the coefficientwise
//! product `f^(pi) g^(pi)`, left translation `u(s^-1 t)` multiplies by
//! `conj(pi(s))` on the left, right translation `u(ts)` by `pi(s)^T` on the
//! right, and `f(s^-1)` has coefficient `f^(pi)^T` at the conjugate label.

mod json;
mod norms;
mod ops;
mod random;
mod transform;

use std::collections::BTreeMap;

use crate::group::{GroupModel, IrrepLabel};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::{Error, Result};

pub use json::{GroupSpec, TrigPolyJson};
pub use norms::{algebra_norm, schatten_norm, AlgebraNormKind, Schatten};
pub use ops::{check_involution, convolve, multiply, supports_multiply, tensor, translate, Side};
pub use random::{random_sampled, random_trig_poly};
pub use transform::{evaluate, fourier_transform, inverse_transform, transform_by_quadrature, FinitePlan};

/// Blocks whose largest entry is below this fraction of the largest entry
/// overall are dropped by [`TrigPoly::pruned`].
pub const PRUNE_REL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct TrigPoly {
    group: GroupModel,
    coeffs: BTreeMap<IrrepLabel, CMat>,
}

impl TrigPoly {
    pub fn zero(group: &GroupModel) -> Self {
        TrigPoly { group: group.clone(), coeffs: BTreeMap::new() }
    }

    /// Builds a polynomial, checking every label is in range and every block
    /// has shape `d x d`. Repeated labels add; exact zero blocks are dropped.
    pub fn new(group: &GroupModel, coeffs: impl IntoIterator<Item = (IrrepLabel, CMat)>) -> Result<Self> {
        let mut out = TrigPoly::zero(group);
        for (label, m) in coeffs {
            let d = group.irrep_dim(&label)?;
            if m.shape() != (d, d) {
                return Err(Error::DimensionMismatch { expected: d, got: m.nrows().max(m.ncols()) });
            }
            out.add_block(label, m);
        }
        out.coeffs.retain(|_, m| m.iter().any(|z| *z != ZERO));
        Ok(out)
    }

    // Caller guarantees the label is valid and the shape matches.
    pub(crate) fn add_block(&mut self, label: IrrepLabel, m: CMat) {
        match self.coeffs.get_mut(&label) {
            Some(existing) => *existing += m,
            None => {
                self.coeffs.insert(label, m);
            }
        }
    }

    /// The constant function `c`.
    pub fn constant(group: &GroupModel, c: C64) -> Self {
        let trivial = trivial_label(group);
        TrigPoly::new(group, [(trivial, CMat::from_element(1, 1, c))]).expect("trivial label is in range")
    }

    /// The matrix coefficient `s -> pi(s)_{ij}`, whose transform is
    /// `E_ij / d_pi` at `pi` by the orthogonality relations.
    pub fn matrix_coefficient(group: &GroupModel, label: &IrrepLabel, i: usize, j: usize) -> Result<Self> {
        let d = group.irrep_dim(label)?;
        if i >= d || j >= d {
            return Err(Error::DimensionMismatch { expected: d, got: i.max(j) + 1 });
        }
        let mut m = CMat::zeros(d, d);
        m[(i, j)] = C64::new(1.0 / d as f64, 0.0);
        TrigPoly::new(group, [(label.clone(), m)])
    }

    /// The character `s -> trace pi(s)`, coefficient `I / d_pi`.
    pub fn character(group: &GroupModel, label: &IrrepLabel) -> Result<Self> {
        let d = group.irrep_dim(label)?;
        TrigPoly::new(group, [(label.clone(), linalg::identity(d) / C64::new(d as f64, 0.0))])
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn coeffs(&self) -> &BTreeMap<IrrepLabel, CMat> {
        &self.coeffs
    }

    pub fn coeff(&self, label: &IrrepLabel) -> Option<&CMat> {
        self.coeffs.get(label)
    }

    pub fn support(&self) -> impl Iterator<Item = &IrrepLabel> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.coeffs.keys().all(IrrepLabel::is_canonical)
    }

    /// Drops blocks that are negligible relative to the largest block.
    pub fn pruned(mut self) -> Self {
        let scale = self.coeffs.values().map(linalg::max_abs).fold(0.0, f64::max);
        self.coeffs.retain(|_, m| linalg::max_abs(m) > PRUNE_REL * scale);
        self
    }

    /// Rewrites every coefficient on canonical labels: a block `C` at a label
    /// with `label(s) = V sigma(s) V^*` moves to `sigma` as `V^T C conj(V)`.
    pub fn canonical(&self) -> Result<Self> {
        if self.is_canonical() {
            return Ok(self.clone());
        }
        let mut out = TrigPoly::zero(&self.group);
        for (label, c) in &self.coeffs {
            if label.is_canonical() {
                out.add_block(label.clone(), c.clone());
            } else {
                let (sigma, v) = self.group.canonical_form(label)?;
                out.add_block(sigma, v.transpose() * c * linalg::conj(&v));
            }
        }
        Ok(out.pruned())
    }

    pub fn scale(&self, c: C64) -> Self {
        let coeffs = self.coeffs.iter().map(|(l, m)| (l.clone(), m * c)).collect();
        TrigPoly { group: self.group.clone(), coeffs }.pruned_exact()
    }

    pub fn add(&self, other: &TrigPoly) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (l, m) in &other.coeffs {
            out.add_block(l.clone(), m.clone());
        }
        Ok(out.pruned_exact())
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    fn pruned_exact(mut self) -> Self {
        self.coeffs.retain(|_, m| m.iter().any(|z| *z != ZERO));
        self
    }

    /// Largest coefficient entry difference after canonicalizing both sides.
    pub fn max_abs_diff(&self, other: &TrigPoly) -> Result<f64> {
        let diff = self.canonical()?.sub(&other.canonical()?)?;
        Ok(diff.coeffs.values().map(linalg::max_abs).fold(0.0, f64::max))
    }

    pub(crate) fn same_group(&self, other: &TrigPoly) -> Result<()> {
        if self.group == other.group { Ok(()) } else { Err(Error::GroupMismatch) }
    }

    pub(crate) fn from_map(group: &GroupModel, coeffs: BTreeMap<IrrepLabel, CMat>) -> Self {
        TrigPoly { group: group.clone(), coeffs }
    }
}

/// The trivial representation's label.
pub fn trivial_label(group: &GroupModel) -> IrrepLabel {
    match group {
        GroupModel::Finite(_) => IrrepLabel::index(0),
        GroupModel::Su2 { .. } => IrrepLabel::spin(0),
        GroupModel::Torus { .. } => IrrepLabel::freq(0),
        GroupModel::Product(a, b) => IrrepLabel::pair(trivial_label(a), trivial_label(b)),
    }
}

/// Values of a function on every element of a finite model, in the order of
/// `GroupModel::elements`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    group: GroupModel,
    values: Vec<C64>,
}

impl SampledFunction {
    pub fn new(group: &GroupModel, values: Vec<C64>) -> Result<Self> {
        let n = group
            .order()
            .ok_or_else(|| Error::Unsupported("sampled functions need a finite group".into()))?;
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        Ok(SampledFunction { group: group.clone(), values })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &SampledFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}
