//! Compact groups at desk scale and their dual objects.
//!
//! A [`GroupModel`] is a finite group with a validated irrep table, SU(2)
//! with a spin cutoff, the circle with a frequency cutoff, or a product of
//! two models. Irreps are named structurally by [`IrrepLabel`]; a conjugated
//! label denotes the entrywise complex conjugate representation and is never
//! identified with another label except through [`GroupModel::canonical_form`].

pub mod finite;
pub mod subgroup;
pub mod su2;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, CMat, C64};
use crate::{Error, Result};

pub use finite::{FiniteGroup, FiniteGroupJson};
pub use su2::Su2Element;
pub use subgroup::SubgroupModel;

#[derive(Clone, Debug)]
pub enum GroupModel {
    Finite(Arc<FiniteGroup>),
    /// SU(2) with spins `j <= two_j_max / 2`.
    Su2 { two_j_max: u32 },
    /// The circle group with characters `|n| <= n_max`.
    Torus { n_max: u32 },
    Product(Arc<GroupModel>, Arc<GroupModel>),
}

impl PartialEq for GroupModel {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupModel::Finite(a), GroupModel::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            (GroupModel::Su2 { two_j_max: a }, GroupModel::Su2 { two_j_max: b }) => a == b,
            (GroupModel::Torus { n_max: a }, GroupModel::Torus { n_max: b }) => a == b,
            (GroupModel::Product(a1, a2), GroupModel::Product(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Finite(usize),
    Su2(Su2Element),
    /// Angle in `(-pi, pi]`.
    Torus(f64),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LabelName {
    #[serde(rename = "index")]
    Index(usize),
    /// Spin stored as `2j`.
    #[serde(rename = "two_j")]
    Spin(u32),
    #[serde(rename = "freq")]
    Freq(i64),
    #[serde(rename = "pair")]
    Pair(Box<IrrepLabel>, Box<IrrepLabel>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrrepLabel {
    #[serde(rename = "label")]
    pub name: LabelName,
    #[serde(default)]
    pub conjugated: bool,
}

impl IrrepLabel {
    pub fn index(i: usize) -> Self {
        IrrepLabel { name: LabelName::Index(i), conjugated: false }
    }

    pub fn spin(two_j: u32) -> Self {
        IrrepLabel { name: LabelName::Spin(two_j), conjugated: false }
    }

    pub fn freq(n: i64) -> Self {
        IrrepLabel { name: LabelName::Freq(n), conjugated: false }
    }

    pub fn pair(a: IrrepLabel, b: IrrepLabel) -> Self {
        IrrepLabel { name: LabelName::Pair(Box::new(a), Box::new(b)), conjugated: false }
    }

    /// The conjugate representation. For pairs the flag is pushed into both
    /// factors, so a pair label itself is never flagged.
    pub fn conj(&self) -> Self {
        match &self.name {
            LabelName::Pair(a, b) => IrrepLabel::pair(a.conj(), b.conj()),
            name => IrrepLabel { name: name.clone(), conjugated: !self.conjugated },
        }
    }

    pub fn is_canonical(&self) -> bool {
        match &self.name {
            LabelName::Pair(a, b) => a.is_canonical() && b.is_canonical(),
            _ => !self.conjugated,
        }
    }

    pub fn factors(&self) -> Option<(&IrrepLabel, &IrrepLabel)> {
        match &self.name {
            LabelName::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugated {
            write!(f, "conj ")?;
        }
        match &self.name {
            LabelName::Index(i) => write!(f, "pi{i}"),
            LabelName::Spin(tj) if tj % 2 == 0 => write!(f, "j={}", tj / 2),
            LabelName::Spin(tj) => write!(f, "j={tj}/2"),
            LabelName::Freq(n) => write!(f, "chi{n}"),
            LabelName::Pair(a, b) => write!(f, "({a} x {b})"),
        }
    }
}

/// Flips the conjugation flag; an involution.
pub fn conjugate_label(label: &IrrepLabel) -> IrrepLabel {
    label.conj()
}

impl GroupModel {
    pub fn finite(group: FiniteGroup) -> Self {
        GroupModel::Finite(Arc::new(group))
    }

    pub fn su2(two_j_max: u32) -> Self {
        GroupModel::Su2 { two_j_max }
    }

    pub fn torus(n_max: u32) -> Self {
        GroupModel::Torus { n_max }
    }

    pub fn product(a: GroupModel, b: GroupModel) -> Self {
        GroupModel::Product(Arc::new(a), Arc::new(b))
    }

    /// `G x G`, the ambient group of the coset maps.
    pub fn squared(&self) -> Self {
        GroupModel::product(self.clone(), self.clone())
    }

    /// Resolves names such as `z6`, `s3`, `d4`, `q8`, `su2`, `torus` and
    /// products `s3xs3`; `two_j_max` sets the SU(2) cutoff and `n_max = two_j_max`
    /// for the circle.
    pub fn named(name: &str, two_j_max: u32) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        if let Some((a, b)) = lower.split_once('x') {
            return Ok(GroupModel::product(GroupModel::named(a, two_j_max)?, GroupModel::named(b, two_j_max)?));
        }
        match lower.as_str() {
            "su2" => Ok(GroupModel::su2(two_j_max)),
            "torus" | "t" => Ok(GroupModel::torus(two_j_max)),
            other => Ok(GroupModel::finite(FiniteGroup::builtin(other)?)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupModel::Finite(g) => g.name().to_string(),
            GroupModel::Su2 { two_j_max } => format!("su2[2j<={two_j_max}]"),
            GroupModel::Torus { n_max } => format!("torus[|n|<={n_max}]"),
            GroupModel::Product(a, b) => format!("{}x{}", a.name(), b.name()),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            GroupModel::Finite(_) => "finite",
            GroupModel::Su2 { .. } => "su2",
            GroupModel::Torus { .. } => "torus",
            GroupModel::Product(..) => "product",
        }
    }

    pub fn factors(&self) -> Option<(&GroupModel, &GroupModel)> {
        match self {
            GroupModel::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// True when the group has finitely many elements (finite tables and
    /// products of them).
    pub fn is_finite(&self) -> bool {
        match self {
            GroupModel::Finite(_) => true,
            GroupModel::Product(a, b) => a.is_finite() && b.is_finite(),
            _ => false,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GroupModel::Finite(g) => Some(g.order()),
            GroupModel::Product(a, b) => Some(a.order()? * b.order()?),
            _ => None,
        }
    }

    /// All elements of a finite model; products enumerate left-major.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            GroupModel::Finite(g) => Some((0..g.order()).map(Element::Finite).collect()),
            GroupModel::Product(a, b) => {
                let (ea, eb) = (a.elements()?, b.elements()?);
                Some(ea.iter().flat_map(|x| eb.iter().map(move |y| Element::pair(x.clone(), y.clone()))).collect())
            }
            _ => None,
        }
    }

    /// Position of `s` in [`GroupModel::elements`].
    pub fn element_index(&self, s: &Element) -> Result<usize> {
        match (self, s) {
            (GroupModel::Finite(g), Element::Finite(i)) if *i < g.order() => Ok(*i),
            (GroupModel::Product(a, b), Element::Pair(x, y)) => {
                let nb = b.order().ok_or(Error::Unsupported("indexing a continuous group".into()))?;
                Ok(a.element_index(x)? * nb + b.element_index(y)?)
            }
            _ => Err(Error::KindMismatch(self.kind())),
        }
    }

    pub fn validate_element(&self, s: &Element) -> Result<()> {
        match (self, s) {
            (GroupModel::Finite(g), Element::Finite(i)) if *i < g.order() => Ok(()),
            (GroupModel::Su2 { .. }, Element::Su2(_)) => Ok(()),
            (GroupModel::Torus { .. }, Element::Torus(t)) if t.is_finite() => Ok(()),
            (GroupModel::Product(a, b), Element::Pair(x, y)) => {
                a.validate_element(x)?;
                b.validate_element(y)
            }
            _ => Err(Error::KindMismatch(self.kind())),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupModel::Finite(g) => Element::Finite(g.identity()),
            GroupModel::Su2 { .. } => Element::Su2(Su2Element::identity()),
            GroupModel::Torus { .. } => Element::Torus(0.0),
            GroupModel::Product(a, b) => Element::pair(a.identity(), b.identity()),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate_element(a)?;
        self.validate_element(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (GroupModel::Finite(g), Element::Finite(x), Element::Finite(y)) => Element::Finite(g.mul(*x, *y)),
            (GroupModel::Su2 { .. }, Element::Su2(x), Element::Su2(y)) => Element::Su2(x.mul(y)),
            (GroupModel::Torus { .. }, Element::Torus(x), Element::Torus(y)) => Element::Torus(wrap_angle(x + y)),
            (GroupModel::Product(ga, gb), Element::Pair(x1, y1), Element::Pair(x2, y2)) => {
                Element::pair(ga.mul_unchecked(x1, x2), gb.mul_unchecked(y1, y2))
            }
            _ => unreachable!("validated elements"),
        }
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.validate_element(a)?;
        Ok(match (self, a) {
            (GroupModel::Finite(g), Element::Finite(x)) => Element::Finite(g.inv(*x)),
            (GroupModel::Su2 { .. }, Element::Su2(x)) => Element::Su2(x.inverse()),
            (GroupModel::Torus { .. }, Element::Torus(x)) => Element::Torus(wrap_angle(-x)),
            (GroupModel::Product(ga, gb), Element::Pair(x, y)) => Element::pair(ga.inverse(x)?, gb.inverse(y)?),
            _ => unreachable!("validated element"),
        })
    }

    /// `diag(e^{i theta}, e^{-i theta})` in SU(2).
    pub fn torus_element(&self, theta: f64) -> Result<Element> {
        match self {
            GroupModel::Su2 { .. } => Ok(Element::Su2(Su2Element::torus(theta))),
            _ => Err(Error::KindMismatch(self.kind())),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match self {
            GroupModel::Finite(g) => Element::Finite(rng.gen_range(0..g.order())),
            GroupModel::Su2 { .. } => Element::Su2(Su2Element::random(rng)),
            GroupModel::Torus { .. } => Element::Torus(wrap_angle(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))),
            GroupModel::Product(a, b) => Element::pair(a.random_element(rng), b.random_element(rng)),
        }
    }

    /// The canonical labels of the dual object up to the model's cutoff.
    pub fn enumerate_irreps(&self) -> Vec<IrrepLabel> {
        match self {
            GroupModel::Finite(g) => (0..g.irreps().len()).map(IrrepLabel::index).collect(),
            GroupModel::Su2 { two_j_max } => (0..=*two_j_max).map(IrrepLabel::spin).collect(),
            GroupModel::Torus { n_max } => {
                let n = *n_max as i64;
                (-n..=n).map(IrrepLabel::freq).collect()
            }
            GroupModel::Product(a, b) => {
                let (la, lb) = (a.enumerate_irreps(), b.enumerate_irreps());
                la.iter().flat_map(|x| lb.iter().map(move |y| IrrepLabel::pair(x.clone(), y.clone()))).collect()
            }
        }
    }

    /// Checks the label belongs to this model (within cutoff) and returns its
    /// dimension.
    pub fn irrep_dim(&self, label: &IrrepLabel) -> Result<usize> {
        let out_of_range = || Error::LabelOutOfRange(format!("{label} in {}", self.name()));
        match (self, &label.name) {
            (GroupModel::Finite(g), LabelName::Index(i)) => g.irreps().get(*i).map(|r| r.dim).ok_or_else(out_of_range),
            (GroupModel::Su2 { two_j_max }, LabelName::Spin(tj)) if tj <= two_j_max => Ok(*tj as usize + 1),
            (GroupModel::Torus { n_max }, LabelName::Freq(n)) if n.unsigned_abs() <= *n_max as u64 => Ok(1),
            (GroupModel::Product(ga, gb), LabelName::Pair(a, b)) if !label.conjugated => Ok(ga.irrep_dim(a)? * gb.irrep_dim(b)?),
            _ => Err(out_of_range()),
        }
    }

    /// `pi(s)` in the model's fixed orthonormal basis; conjugated labels
    /// return the entrywise conjugate.
    pub fn irrep_matrix(&self, label: &IrrepLabel, s: &Element) -> Result<CMat> {
        self.irrep_dim(label)?;
        self.validate_element(s)?;
        let m = match (self, &label.name, s) {
            (GroupModel::Finite(g), LabelName::Index(i), Element::Finite(x)) => g.irreps()[*i].matrices[*x].clone(),
            (GroupModel::Su2 { .. }, LabelName::Spin(tj), Element::Su2(x)) => su2::spin_matrix(*tj, x),
            (GroupModel::Torus { .. }, LabelName::Freq(n), Element::Torus(t)) => {
                CMat::from_element(1, 1, C64::from_polar(1.0, *n as f64 * t))
            }
            (GroupModel::Product(ga, gb), LabelName::Pair(a, b), Element::Pair(x, y)) => {
                linalg::kron(&ga.irrep_matrix(a, x)?, &gb.irrep_matrix(b, y)?)
            }
            _ => return Err(Error::KindMismatch(self.kind())),
        };
        Ok(if label.conjugated { linalg::conj(&m) } else { m })
    }

    /// Returns `(sigma, V)` with `sigma` canonical and
    /// `label(s) = V sigma(s) V^*` for every `s`.
    pub fn canonical_form(&self, label: &IrrepLabel) -> Result<(IrrepLabel, CMat)> {
        let d = self.irrep_dim(label)?;
        if let (GroupModel::Product(ga, gb), LabelName::Pair(a, b)) = (self, &label.name) {
            let (ca, va) = ga.canonical_form(a)?;
            let (cb, vb) = gb.canonical_form(b)?;
            return Ok((IrrepLabel::pair(ca, cb), linalg::kron(&va, &vb)));
        }
        if !label.conjugated {
            return Ok((label.clone(), linalg::identity(d)));
        }
        match (self, &label.name) {
            (GroupModel::Finite(g), LabelName::Index(i)) => {
                let partner = g.partner(*i);
                Ok((IrrepLabel::index(partner.index), partner.intertwiner.clone()))
            }
            (GroupModel::Su2 { .. }, LabelName::Spin(tj)) => {
                Ok((IrrepLabel::spin(*tj), su2::spin_matrix(*tj, &Su2Element::real_structure())))
            }
            (GroupModel::Torus { .. }, LabelName::Freq(n)) => Ok((IrrepLabel::freq(-n), linalg::identity(1))),
            _ => Err(Error::KindMismatch(self.kind())),
        }
    }

    /// Polynomial degree of a label's matrix entries, used to size quadrature.
    pub fn label_degree(&self, label: &IrrepLabel) -> u32 {
        match &label.name {
            LabelName::Index(_) => 0,
            LabelName::Spin(tj) => *tj,
            LabelName::Freq(n) => n.unsigned_abs() as u32,
            LabelName::Pair(a, b) => self
                .factors()
                .map_or(0, |(ga, gb)| ga.label_degree(a).max(gb.label_degree(b))),
        }
    }

    /// Largest label degree inside the cutoff.
    pub fn max_degree(&self) -> u32 {
        match self {
            GroupModel::Finite(_) => 0,
            GroupModel::Su2 { two_j_max } => *two_j_max,
            GroupModel::Torus { n_max } => *n_max,
            GroupModel::Product(a, b) => a.max_degree().max(b.max_degree()),
        }
    }

    /// Weighted nodes exact against Haar measure for integrands whose
    /// factors have total degree at most `degree` (per product factor).
    pub fn quadrature(&self, degree: u32) -> Vec<(Element, f64)> {
        match self {
            GroupModel::Finite(g) => {
                let w = 1.0 / g.order() as f64;
                (0..g.order()).map(|i| (Element::Finite(i), w)).collect()
            }
            GroupModel::Su2 { .. } => su2::euler_quadrature(degree)
                .into_iter()
                .map(|(g, w)| (Element::Su2(g), w))
                .collect(),
            GroupModel::Torus { .. } => {
                let n = 2 * degree as usize + 1;
                su2::circle_nodes(n).into_iter().map(|t| (Element::Torus(t), 1.0 / n as f64)).collect()
            }
            GroupModel::Product(a, b) => {
                let (qa, qb) = (a.quadrature(degree), b.quadrature(degree));
                qa.iter()
                    .flat_map(|(x, wx)| qb.iter().map(move |(y, wy)| (Element::pair(x.clone(), y.clone()), wx * wy)))
                    .collect()
            }
        }
    }

    /// Haar integral of a scalar function.
    pub fn integrate(&self, degree: u32, f: impl Fn(&Element) -> C64) -> C64 {
        self.quadrature(degree).iter().map(|(s, w)| f(s) * *w).sum()
    }

    /// Decomposes `a (x) b` for canonical labels into
    /// `sum_l C_l lambda_l(s) C_l^*`; available for SU(2), the circle and
    /// products of those.
    pub fn tensor_decompose(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<Vec<(IrrepLabel, CMat)>> {
        self.irrep_dim(a)?;
        self.irrep_dim(b)?;
        if !a.is_canonical() || !b.is_canonical() {
            return Err(Error::Unsupported("tensor decomposition of conjugated labels".into()));
        }
        match (self, &a.name, &b.name) {
            (GroupModel::Su2 { .. }, LabelName::Spin(t1), LabelName::Spin(t2)) => Ok(su2::tensor_blocks(*t1, *t2)
                .into_iter()
                .map(|(tj, c)| (IrrepLabel::spin(tj), c))
                .collect()),
            (GroupModel::Torus { .. }, LabelName::Freq(n1), LabelName::Freq(n2)) => {
                Ok(vec![(IrrepLabel::freq(n1 + n2), linalg::identity(1))])
            }
            (GroupModel::Product(ga, gb), LabelName::Pair(a1, a2), LabelName::Pair(b1, b2)) => {
                let (d1, d2) = (ga.irrep_dim(a1)?, gb.irrep_dim(a2)?);
                let (e1, e2) = (ga.irrep_dim(b1)?, gb.irrep_dim(b2)?);
                let left = ga.tensor_decompose_unbounded(a1, b1)?;
                let right = gb.tensor_decompose_unbounded(a2, b2)?;
                // (a1 x a2) (x) (b1 x b2) has row order (i1 i2 k1 k2); the factor
                // blocks expect (i1 k1 i2 k2).
                let n = d1 * d2 * e1 * e2;
                let perm = CMat::from_fn(n, n, |row, col| {
                    let (i1, rest) = (row / (d2 * e1 * e2), row % (d2 * e1 * e2));
                    let (i2, rest) = (rest / (e1 * e2), rest % (e1 * e2));
                    let (k1, k2) = (rest / e2, rest % e2);
                    let target = ((i1 * e1 + k1) * d2 + i2) * e2 + k2;
                    if col == target { linalg::ONE } else { linalg::ZERO }
                });
                let mut out = Vec::new();
                for (l1, c1) in &left {
                    for (l2, c2) in &right {
                        out.push((IrrepLabel::pair(l1.clone(), l2.clone()), &perm * linalg::kron(c1, c2)));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported(format!("tensor decomposition on {}", self.name()))),
        }
    }

    // Component labels may exceed the cutoff here; the caller checks.
    fn tensor_decompose_unbounded(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<Vec<(IrrepLabel, CMat)>> {
        match self {
            GroupModel::Su2 { .. } | GroupModel::Torus { .. } => self.widened().tensor_decompose(a, b),
            GroupModel::Product(ga, gb) => {
                GroupModel::product(ga.widened(), gb.widened()).tensor_decompose(a, b)
            }
            GroupModel::Finite(_) => Err(Error::Unsupported(format!(
                "tensor decomposition on finite group {}; multiply through samples instead",
                self.name()
            ))),
        }
    }

    /// The same model with its cutoff doubled (large enough for pairwise
    /// products of in-range labels).
    pub fn widened(&self) -> GroupModel {
        match self {
            GroupModel::Su2 { two_j_max } => GroupModel::su2(2 * two_j_max),
            GroupModel::Torus { n_max } => GroupModel::torus(2 * n_max),
            GroupModel::Product(a, b) => GroupModel::product(a.widened(), b.widened()),
            finite => finite.clone(),
        }
    }
}

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_angle(t: f64) -> f64 {
    use std::f64::consts::PI;
    let mut r = t.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    if r <= -PI { r + 2.0 * PI } else { r }
}
