use std::collections::BTreeMap;

use super::{SampledFunction, TrigPoly};
use crate::group::{Element, GroupModel, IrrepLabel};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::{Error, Result};

/// Irrep matrices of a finite model at every element, for repeated
/// transforms on the same group.
#[derive(Clone, Debug)]
pub struct FinitePlan {
    group: GroupModel,
    labels: Vec<IrrepLabel>,
    /// `matrices[l][s]` is `pi_l(s)`.
    matrices: Vec<Vec<CMat>>,
}

impl FinitePlan {
    pub fn new(group: &GroupModel) -> Result<Self> {
        let elements = group.elements().ok_or_else(|| Error::Unsupported("transform of a continuous group".into()))?;
        let labels = group.enumerate_irreps();
        let matrices = labels
            .iter()
            .map(|l| elements.iter().map(|s| group.irrep_matrix(l, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FinitePlan { group: group.clone(), labels, matrices })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    /// `f^(pi) = (1/|G|) sum_s f(s) conj(pi(s))` for every canonical irrep.
    pub fn transform(&self, values: &[C64]) -> Result<TrigPoly> {
        let n = self.matrices.first().map_or(0, Vec::len);
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        let mut coeffs = BTreeMap::new();
        for (label, mats) in self.labels.iter().zip(&self.matrices) {
            let d = mats[0].nrows();
            let mut acc = CMat::zeros(d, d);
            for (m, value) in mats.iter().zip(values) {
                if *value != ZERO {
                    acc += m.map(|z| z.conj()) * *value;
                }
            }
            coeffs.insert(label.clone(), acc / C64::new(n as f64, 0.0));
        }
        Ok(TrigPoly::from_map(&self.group, coeffs).pruned())
    }

    /// Values at every element, in the order of `GroupModel::elements`.
    pub fn evaluate(&self, f: &TrigPoly) -> Result<Vec<C64>> {
        if f.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let f = f.canonical()?;
        let n = self.matrices.first().map_or(0, Vec::len);
        let mut values = vec![ZERO; n];
        for (label, mats) in self.labels.iter().zip(&self.matrices) {
            if let Some(c) = f.coeff(label) {
                let d = c.nrows() as f64;
                for (v, m) in values.iter_mut().zip(mats) {
                    *v += c.component_mul(m).sum() * d;
                }
            }
        }
        Ok(values)
    }
}

/// `f^(pi) = (1/|G|) sum_s f(s) conj(pi(s))` for every canonical irrep.
pub fn fourier_transform(f: &SampledFunction) -> Result<TrigPoly> {
    FinitePlan::new(f.group())?.transform(f.values())
}

/// `f(s) = sum_pi d_pi trace[f^(pi) pi(s)^T]`.
pub fn evaluate(f: &TrigPoly, s: &Element) -> Result<C64> {
    let group = f.group();
    let mut total = ZERO;
    for (label, c) in f.coeffs() {
        let m = group.irrep_matrix(label, s)?;
        let d = m.nrows() as f64;
        total += c.component_mul(&m).sum() * d;
    }
    Ok(total)
}

/// Evaluates at every element of a finite model.
pub fn inverse_transform(f: &TrigPoly) -> Result<SampledFunction> {
    let values = FinitePlan::new(f.group())?.evaluate(f)?;
    SampledFunction::new(f.group(), values)
}

/// Coefficients of an arbitrary function through the model's Haar
/// quadrature; exact when `f` is a trigonometric polynomial whose degree plus
/// the label degrees stays within `degree`.
pub fn transform_by_quadrature(
    group: &GroupModel,
    degree: u32,
    labels: &[IrrepLabel],
    f: impl Fn(&Element) -> C64,
) -> Result<TrigPoly> {
    let nodes = group.quadrature(degree);
    let values: Vec<C64> = nodes.iter().map(|(s, _)| f(s)).collect();
    let mut coeffs = BTreeMap::new();
    for label in labels {
        let d = group.irrep_dim(label)?;
        let mut acc = CMat::zeros(d, d);
        for ((s, w), v) in nodes.iter().zip(&values) {
            acc += linalg::conj(&group.irrep_matrix(label, s)?) * (*v * *w);
        }
        coeffs.insert(label.clone(), acc);
    }
    Ok(TrigPoly::from_map(group, coeffs).pruned())
}
