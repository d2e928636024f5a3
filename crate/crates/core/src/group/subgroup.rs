//! Compact subgroups used by the coset machinery, with Haar averaging.

use std::collections::BTreeSet;

use super::{su2, Element, GroupModel};
use crate::linalg::C64;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum SubgroupModel {
    /// Explicit subset of a finite model, as positions in `parent.elements()`.
    Finite { parent: GroupModel, members: Vec<usize> },
    /// `z -> diag(z, 1/z)` inside SU(2).
    Su2Torus { parent: GroupModel },
    /// `{(s, s)}` inside `G x G`.
    Diagonal { parent: GroupModel },
}

impl SubgroupModel {
    /// Checks closure under products and inverses.
    pub fn finite(parent: &GroupModel, members: Vec<usize>) -> Result<Self> {
        let elements = parent
            .elements()
            .ok_or_else(|| Error::Unsupported("explicit subgroups need a finite parent".into()))?;
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if set.is_empty() || set.iter().any(|&i| i >= elements.len()) {
            return Err(Error::InvalidGroup("subgroup members out of range".into()));
        }
        for &a in &set {
            let inv = parent.element_index(&parent.inverse(&elements[a])?)?;
            if !set.contains(&inv) {
                return Err(Error::InvalidGroup(format!("subgroup not closed under inverse at {a}")));
            }
            for &b in &set {
                let ab = parent.element_index(&parent.multiply(&elements[a], &elements[b])?)?;
                if !set.contains(&ab) {
                    return Err(Error::InvalidGroup(format!("subgroup not closed at ({a}, {b})")));
                }
            }
        }
        Ok(SubgroupModel::Finite { parent: parent.clone(), members: set.into_iter().collect() })
    }

    pub fn su2_torus(parent: &GroupModel) -> Result<Self> {
        match parent {
            GroupModel::Su2 { .. } => Ok(SubgroupModel::Su2Torus { parent: parent.clone() }),
            _ => Err(Error::KindMismatch("su2")),
        }
    }

    pub fn diagonal(parent: &GroupModel) -> Result<Self> {
        match parent.factors() {
            Some((a, b)) if a == b => Ok(SubgroupModel::Diagonal { parent: parent.clone() }),
            _ => Err(Error::InvalidGroup("diagonal needs a product G x G".into())),
        }
    }

    pub fn parent(&self) -> &GroupModel {
        match self {
            SubgroupModel::Finite { parent, .. }
            | SubgroupModel::Su2Torus { parent }
            | SubgroupModel::Diagonal { parent } => parent,
        }
    }

    /// Elements of a finite subgroup (explicit subsets and diagonals of
    /// finite products).
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            SubgroupModel::Finite { parent, members } => {
                let all = parent.elements()?;
                Some(members.iter().map(|&i| all[i].clone()).collect())
            }
            SubgroupModel::Diagonal { parent } => {
                let (g, _) = parent.factors()?;
                Some(g.elements()?.into_iter().map(|s| Element::pair(s.clone(), s)).collect())
            }
            SubgroupModel::Su2Torus { .. } => None,
        }
    }

    /// Positions of the members in `parent.elements()`.
    pub fn member_indices(&self) -> Result<Vec<usize>> {
        let parent = self.parent();
        let elements = self
            .elements()
            .ok_or_else(|| Error::Unsupported("member indices of a continuous subgroup".into()))?;
        elements.iter().map(|s| parent.element_index(s)).collect()
    }

    /// Haar average of a vector-valued function over the subgroup. On the
    /// SU(2) torus the trapezoid rule uses `4 * 2j_max + 1` nodes, exact for
    /// weights up to `4 * 2j_max`.
    pub fn haar_average(&self, action: impl Fn(&Element) -> Vec<C64>) -> Result<Vec<C64>> {
        let (nodes, w): (Vec<Element>, f64) = match self {
            SubgroupModel::Su2Torus { parent: GroupModel::Su2 { two_j_max } } => {
                let n = 4 * *two_j_max as usize + 1;
                let nodes = su2::circle_nodes(n).into_iter().map(|t| Element::Su2(su2::Su2Element::torus(t))).collect();
                (nodes, 1.0 / n as f64)
            }
            SubgroupModel::Su2Torus { .. } => return Err(Error::KindMismatch("su2")),
            _ => {
                let nodes = self
                    .elements()
                    .ok_or_else(|| Error::Unsupported("Haar average over the diagonal of a continuous group".into()))?;
                let w = 1.0 / nodes.len() as f64;
                (nodes, w)
            }
        };
        let mut acc: Option<Vec<C64>> = None;
        for s in &nodes {
            let v = action(s);
            match acc.as_mut() {
                None => acc = Some(v.iter().map(|z| z * w).collect()),
                Some(a) => {
                    if a.len() != v.len() {
                        return Err(Error::DimensionMismatch { expected: a.len(), got: v.len() });
                    }
                    a.iter_mut().zip(&v).for_each(|(x, z)| *x += z * w);
                }
            }
        }
        Ok(acc.unwrap_or_default())
    }
}

/// Every subgroup of a finite model, as sorted member lists ordered by
/// (size, members). All built-in groups have 2-generated subgroups, and
/// closures of pairs are joined until nothing new appears.
pub fn all_subgroups(group: &GroupModel) -> Result<Vec<Vec<usize>>> {
    let elements = group.elements().ok_or_else(|| Error::Unsupported("subgroups of a continuous group".into()))?;
    let n = elements.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| group.element_index(&group.multiply(&elements[a], &elements[b])?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let closure = |gens: &BTreeSet<usize>| -> BTreeSet<usize> {
        let id = group.element_index(&group.identity()).expect("identity");
        let mut set: BTreeSet<usize> = gens.clone();
        set.insert(id);
        loop {
            let extra: Vec<usize> = set
                .iter()
                .flat_map(|&a| set.iter().map(move |&b| (a, b)))
                .map(|(a, b)| table[a][b])
                .filter(|x| !set.contains(x))
                .collect();
            if extra.is_empty() {
                return set;
            }
            set.extend(extra);
        }
    };
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            found.insert(closure(&[a, b].into_iter().collect()).into_iter().collect());
        }
    }
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut grew = false;
        for x in &current {
            for y in &current {
                let joined: BTreeSet<usize> = x.iter().chain(y).copied().collect();
                if found.insert(closure(&joined).into_iter().collect()) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::IrrepLabel;
    use crate::linalg::ONE;

    #[test]
    fn constant_average() {
        let g = GroupModel::named("s3", 0).unwrap();
        let k = SubgroupModel::finite(&g, vec![0, 1]).unwrap();
        let avg = k.haar_average(|_| vec![C64::new(2.5, -1.0)]).unwrap();
        assert_eq!(avg, vec![C64::new(2.5, -1.0)]);
    }

    #[test]
    fn sign_character_averages_to_zero() {
        let g = GroupModel::named("z2", 0).unwrap();
        let k = SubgroupModel::finite(&g, vec![0, 1]).unwrap();
        let avg = k
            .haar_average(|s| vec![g.irrep_matrix(&IrrepLabel::index(1), s).unwrap()[(0, 0)]])
            .unwrap();
        assert!(avg[0].norm() < 1e-15);
    }

    #[test]
    fn su2_torus_quadrature_kills_nonzero_weights() {
        let g = GroupModel::su2(4);
        let k = SubgroupModel::su2_torus(&g).unwrap();
        for n in 1..=16 {
            let avg = k
                .haar_average(|s| {
                    let Element::Su2(x) = s else { unreachable!() };
                    // x = diag(e^{i theta}, ...), so a^n = e^{i n theta}
                    vec![x.matrix()[0][0].powu(n)]
                })
                .unwrap();
            assert!(avg[0].norm() < 1e-12, "weight {n}");
        }
        let one = k.haar_average(|_| vec![ONE]).unwrap();
        assert!((one[0] - ONE).norm() < 1e-14);
    }

    #[test]
    fn closure_is_enforced() {
        let g = GroupModel::named("s3", 0).unwrap();
        assert!(SubgroupModel::finite(&g, vec![0, 1, 2]).is_err());
        assert!(SubgroupModel::finite(&g, vec![0, 4, 5]).is_ok());
        assert!(SubgroupModel::diagonal(&g).is_err());
        assert!(SubgroupModel::diagonal(&g.squared()).is_ok());
    }

    #[test]
    fn subgroup_counts() {
        // S3: 1 + 3 + 1 + 1; D4: 10; Q8: 6; Z6: 4
        for (name, count) in [("s3", 6), ("d4", 10), ("q8", 6), ("z6", 4)] {
            let g = GroupModel::named(name, 0).unwrap();
            assert_eq!(all_subgroups(&g).unwrap().len(), count, "{name}");
        }
    }

    #[test]
    fn diagonal_average() {
        let g = GroupModel::named("z2", 0).unwrap().squared();
        let delta = SubgroupModel::diagonal(&g).unwrap();
        assert_eq!(delta.member_indices().unwrap(), vec![0, 3]);
    }
}
