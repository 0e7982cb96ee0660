//! Invariant Picard rank, minimality certificates and the Lefschetz number.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::Rational;
use crate::linalg::{int_to_rat, Matrix};
use crate::picard::{LatticeClass, PicardLattice};
use crate::weyl::{Isometry, IsometryGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimalityError {
    #[error("trace average {sum}/{order} is not an integer; input is not a group")]
    NonIntegralRank { sum: i64, order: usize },
    #[error("sigma is not an element of order at most 2 in the group")]
    InvalidSigma,
}

/// A lattice together with the finite group acting on it. When present, `sigma` is
/// the lattice image of the real structure and is a member of `group`.
#[derive(Clone, Debug)]
pub struct ActionContext {
    pub lattice: PicardLattice,
    pub group: IsometryGroup,
    pub sigma: Option<Isometry>,
}

impl ActionContext {
    pub fn new(lattice: PicardLattice, group: IsometryGroup, sigma: Option<Isometry>) -> Result<Self, MinimalityError> {
        if let Some(s) = &sigma {
            if !group.contains(s) || !s.compose(s).is_identity() {
                return Err(MinimalityError::InvalidSigma);
            }
        }
        Ok(ActionContext { lattice, group, sigma })
    }
}

/// 1 + (Σ tr_{K⊥} g)/|G|.
pub fn invariant_rank(ctx: &ActionContext) -> Result<usize, MinimalityError> {
    let sum: i64 = ctx.group.elements.iter().map(|g| g.trace() - 1).sum();
    let order = ctx.group.order();
    if sum % order as i64 != 0 {
        return Err(MinimalityError::NonIntegralRank { sum, order });
    }
    let avg = sum / order as i64;
    if avg < 0 {
        return Err(MinimalityError::NonIntegralRank { sum, order });
    }
    Ok(1 + avg as usize)
}

/// Dimension of the common fixed space, from the kernel of the stacked blocks (M − I).
pub fn fixed_sublattice_rank(ctx: &ActionContext) -> usize {
    let n = ctx.lattice.rank();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let gens = if ctx.group.generators.is_empty() { &ctx.group.elements } else { &ctx.group.generators };
    for g in gens.iter().chain(ctx.sigma.iter()) {
        let m = g.to_matrix().sub(&Matrix::identity(n));
        rows.extend(m.rows_vec());
    }
    if rows.is_empty() {
        return n;
    }
    let stacked = int_to_rat(&Matrix::from_rows(rows));
    let k = stacked.kernel();
    debug_assert!(k.iter().all(|v| stacked.apply(v).iter().all(Rational::is_zero)));
    k.len()
}

pub fn is_strongly_minimal(ctx: &ActionContext) -> Result<bool, MinimalityError> {
    Ok(invariant_rank(ctx)? == 1)
}

/// Orbits of the group on exceptional classes, as sorted index lists in order of
/// their smallest member.
pub fn line_orbits(lat: &PicardLattice, group: &IsometryGroup) -> Vec<Vec<usize>> {
    let lines = lat.lines();
    let perms: Vec<Vec<usize>> = group.elements.iter().map(|g| g.line_permutation(lat)).collect();
    let mut seen = vec![false; lines.len()];
    let mut out = Vec::new();
    for i in 0..lines.len() {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = perms.iter().map(|p| p[i]).collect();
        for &j in &orbit {
            seen[j] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// A group-invariant set of pairwise disjoint exceptional classes, if one exists.
///
/// Any subset of a disjoint invariant set that is a single orbit is again disjoint and
/// invariant, so scanning orbits is complete. The first such orbit is returned.
pub fn find_contractible_set(ctx: &ActionContext) -> Option<Vec<LatticeClass>> {
    let lat = &ctx.lattice;
    if lat.degree() > 7 {
        return None;
    }
    let lines = lat.lines();
    line_orbits(lat, &ctx.group)
        .into_iter()
        .find(|orbit| {
            orbit.iter().enumerate().all(|(a, &i)| orbit[a + 1..].iter().all(|&j| lat.dot(&lines[i].0, &lines[j].0) == 0))
        })
        .map(|orbit| orbit.into_iter().map(|i| lines[i].clone()).collect())
}

/// Euler characteristic of the fixed locus: tr_{K⊥}(g) + 3.
pub fn lefschetz_euler(g: &Isometry) -> i64 {
    g.trace() - 1 + 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{close_group, minus_on_kperp, reflection};

    #[test]
    fn trivial_and_geiser() {
        let lat = PicardLattice::new(4).unwrap();
        let ctx = ActionContext::new(lat.clone(), IsometryGroup::trivial(&lat), None).unwrap();
        assert_eq!(invariant_rank(&ctx).unwrap(), 6);
        assert_eq!(fixed_sublattice_rank(&ctx), 6);
        assert!(!is_strongly_minimal(&ctx).unwrap());

        let lat2 = PicardLattice::new(2).unwrap();
        let g = minus_on_kperp(&lat2).unwrap();
        let grp = close_group(&lat2, std::slice::from_ref(&g), 10).unwrap();
        let ctx = ActionContext::new(lat2, grp, Some(g.clone())).unwrap();
        assert_eq!(invariant_rank(&ctx).unwrap(), 1);
        assert_eq!(fixed_sublattice_rank(&ctx), 1);
        assert!(find_contractible_set(&ctx).is_none());
        assert_eq!(lefschetz_euler(&g), -4);
    }

    #[test]
    fn contraction_on_sextic() {
        let lat = PicardLattice::new(6).unwrap();
        let ctx = ActionContext::new(lat.clone(), IsometryGroup::trivial(&lat), None).unwrap();
        assert_eq!(find_contractible_set(&ctx).unwrap().len(), 1);
        let s = reflection(&lat, &LatticeClass(vec![0, 1, -1, 0])).unwrap();
        let grp = close_group(&lat, &[s], 10).unwrap();
        let ctx = ActionContext::new(lat, grp, None).unwrap();
        let set = find_contractible_set(&ctx).unwrap();
        assert!(set.iter().all(|c| ctx.group.elements.iter().all(|g| set.contains(&g.apply_class(c)))));
    }

    #[test]
    fn non_group_is_rejected() {
        let lat = PicardLattice::new(6).unwrap();
        let s = reflection(&lat, &LatticeClass(vec![0, 1, -1, 0])).unwrap();
        let t = reflection(&lat, &LatticeClass(vec![0, 0, 1, -1])).unwrap();
        let fake = IsometryGroup {
            generators: vec![s.clone(), t.clone()],
            elements: vec![Isometry::identity(4), s, t],
        };
        let ctx = ActionContext {
            lattice: lat,
            group: fake,
            sigma: None,
        };
        assert!(matches!(invariant_rank(&ctx), Err(MinimalityError::NonIntegralRank { .. })));
    }
}
