//! Dimension and degree of the projective toric variety of a model.
//!
//! The columns of the parametrization matrix, with the homogenizing row
//! dropped, are lattice points whose convex hull is the model polytope.
//! The variety has the polytope's dimension, and its degree is the
//! normalized volume of the polytope measured in the lattice spanned by
//! differences of its points.

pub mod lattice;
pub mod triangulation;

use crate::cdf::ParamMatrix;

/// Distinct lattice points of a configuration, in first-seen order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    points: Vec<Vec<i128>>,
}

impl LatticePolytope {
    pub fn new(points: Vec<Vec<i128>>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let points = points
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        LatticePolytope { points }
    }

    /// Columns of `a` without the homogenizing row.
    pub fn from_param_matrix(a: &ParamMatrix) -> Self {
        let points = (0..a.num_columns())
            .map(|c| a.column(c)[1..].iter().map(|&x| i128::from(x)).collect())
            .collect();
        Self::new(points)
    }

    pub fn points(&self) -> &[Vec<i128>] {
        &self.points
    }

    fn differences(&self) -> Vec<Vec<i128>> {
        let base = &self.points[0];
        self.points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect()
    }

    /// Affine dimension.
    pub fn dimension(&self) -> usize {
        if self.points.len() <= 1 {
            return 0;
        }
        lattice::rank(&self.differences())
    }

    /// The points in integer coordinates of the lattice spanned by their
    /// differences, so that they become full-dimensional in `Z^d`.
    pub fn intrinsic_points(&self) -> Vec<Vec<i128>> {
        if self.points.len() <= 1 {
            return vec![Vec::new(); self.points.len()];
        }
        let (basis, pivots) = lattice::echelon(self.differences());
        let base = &self.points[0];
        self.points
            .iter()
            .map(|p| {
                let diff: Vec<i128> = p.iter().zip(base).map(|(a, b)| a - b).collect();
                lattice::coordinates(&basis, &pivots, &diff)
                    .expect("difference lies in its own lattice")
            })
            .collect()
    }

    /// Normalized volume in the difference lattice; 1 for a single point.
    pub fn normalized_volume(&self) -> u128 {
        self.normalized_volume_in_order(&(0..self.points.len()).collect::<Vec<_>>())
    }

    /// Same volume, placing the points in the given order.
    pub fn normalized_volume_in_order(&self, order: &[usize]) -> u128 {
        if self.points.len() <= 1 {
            return 1;
        }
        let intrinsic = self.intrinsic_points();
        let placed: Vec<Vec<i128>> = order.iter().map(|&k| intrinsic[k].clone()).collect();
        triangulation::normalized_volume(&placed)
    }
}

/// `rank(A) - 1`.
pub fn projective_dimension(a: &ParamMatrix) -> usize {
    let rows: Vec<Vec<i128>> = a
        .entries()
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    lattice::rank(&rows).saturating_sub(1)
}

/// Degree of the toric variety parametrized by `a`.
pub fn toric_degree(a: &ParamMatrix) -> u128 {
    LatticePolytope::from_param_matrix(a).normalized_volume()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdf::{param_matrix, StateShape};
    use crate::closure::{closure, SplitClosedIdeal, StatementSet};

    fn geometry(text: &str, n: usize) -> (usize, u128) {
        let i = if text.is_empty() {
            SplitClosedIdeal::empty(n)
        } else {
            closure(&StatementSet::parse(text, n).unwrap())
        };
        let a = param_matrix(&i, &StateShape::binary(n));
        (projective_dimension(&a), toric_degree(&a))
    }

    #[test]
    fn table_anchors() {
        assert_eq!(geometry("1|2|3|4", 4), (4, 24));
        assert_eq!(geometry("12|34", 4), (6, 20));
        assert_eq!(geometry("", 4), (15, 1));
        assert_eq!(geometry("1|2", 4), (14, 2));
        assert_eq!(geometry("1|23", 4), (12, 4));
        assert_eq!(geometry("1|2|34", 4), (5, 20));
    }

    #[test]
    fn polytope_dimension_matches_rank() {
        let i = closure(&StatementSet::parse("1|2,3|4", 4).unwrap());
        let a = param_matrix(&i, &StateShape::binary(4));
        assert_eq!(
            LatticePolytope::from_param_matrix(&a).dimension(),
            projective_dimension(&a)
        );
    }

    #[test]
    fn coarse_lattice_is_measured_intrinsically() {
        let p = LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]]);
        assert_eq!(p.normalized_volume(), 2);
        let single = LatticePolytope::new(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(single.points().len(), 1);
        assert_eq!(single.normalized_volume(), 1);
    }

    #[test]
    fn placing_order_is_irrelevant() {
        let i = closure(&StatementSet::parse("1|2,1|3", 4).unwrap());
        let p = LatticePolytope::from_param_matrix(&param_matrix(&i, &StateShape::binary(4)));
        let n = p.points().len();
        let reversed: Vec<usize> = (0..n).rev().collect();
        let interleaved: Vec<usize> = (0..n).step_by(2).chain((1..n).step_by(2)).collect();
        let v = p.normalized_volume();
        assert_eq!(v, 3);
        assert_eq!(p.normalized_volume_in_order(&reversed), v);
        assert_eq!(p.normalized_volume_in_order(&interleaved), v);
    }
}
