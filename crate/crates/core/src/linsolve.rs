//! Sparse exact Gaussian elimination.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Linear system `A c = b` with sparse rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearSystem<S> {
    ncols: usize,
    rows: Vec<(BTreeMap<usize, S>, S)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<S> {
    /// One solution; free unknowns are set to zero.
    Solved(Vec<S>),
    /// Some combination of rows reads `0 = c` with `c ≠ 0`.
    Unsolvable,
}

impl<S: Scalar> Solution<S> {
    pub fn is_solved(&self) -> bool {
        matches!(self, Solution::Solved(_))
    }
}

impl<S: Scalar> LinearSystem<S> {
    pub fn new(ncols: usize) -> Self {
        LinearSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[(BTreeMap<usize, S>, S)] {
        &self.rows
    }

    /// Append `Σ coeffs[j] c_j = rhs`; zero coefficients are dropped.
    pub fn push_row(&mut self, coeffs: impl IntoIterator<Item = (usize, S)>, rhs: S) {
        let mut row = BTreeMap::new();
        for (j, c) in coeffs {
            assert!(j < self.ncols, "column {j} out of range");
            if !c.is_zero() {
                let e = row.entry(j).or_insert_with(S::zero);
                *e = e.clone() + c;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
        self.rows.push((row, rhs));
    }

    /// Residual `A c - b` for a candidate solution.
    pub fn residual(&self, c: &[S]) -> Vec<S> {
        self.rows
            .iter()
            .map(|(row, rhs)| row.iter().fold(-rhs.clone(), |acc, (j, a)| acc + a.clone() * c[*j].clone()))
            .collect()
    }

    /// Row echelon form built incrementally: each pivot row is normalized so
    /// its leading (smallest) column has coefficient 1.
    pub fn solve(&self) -> Solution<S> {
        let mut pivots: BTreeMap<usize, (BTreeMap<usize, S>, S)> = BTreeMap::new();
        for (row, rhs) in &self.rows {
            let mut row = row.clone();
            let mut rhs = rhs.clone();
            loop {
                let Some((&lead, _)) = row.iter().next() else {
                    if !rhs.is_zero() {
                        return Solution::Unsolvable;
                    }
                    break;
                };
                match pivots.get(&lead) {
                    Some((prow, prhs)) => {
                        let f = row[&lead].clone();
                        for (j, a) in prow {
                            let e = row.entry(*j).or_insert_with(S::zero);
                            *e = e.clone() - f.clone() * a.clone();
                            if e.is_zero() {
                                row.remove(j);
                            }
                        }
                        rhs = rhs - f * prhs.clone();
                    }
                    None => {
                        let inv = S::one() / row[&lead].clone();
                        for a in row.values_mut() {
                            *a = a.clone() * inv.clone();
                        }
                        rhs = rhs * inv;
                        pivots.insert(lead, (row, rhs));
                        break;
                    }
                }
            }
        }
        let mut x = vec![S::zero(); self.ncols];
        for (&c, (row, rhs)) in pivots.iter().rev() {
            let v = row.iter().filter(|(j, _)| **j != c).fold(rhs.clone(), |acc, (j, a)| acc - a.clone() * x[*j].clone());
            x[c] = v;
        }
        Solution::Solved(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn trivial_systems() {
        let empty = LinearSystem::<Rational>::new(2);
        assert_eq!(empty.solve(), Solution::Solved(vec![r(0), r(0)]));

        let mut one = LinearSystem::new(1);
        one.push_row([(0, r(2))], r(4));
        assert_eq!(one.solve(), Solution::Solved(vec![r(2)]));

        let mut bad = LinearSystem::<Rational>::new(1);
        bad.push_row([], r(1));
        assert_eq!(bad.solve(), Solution::Unsolvable);
    }

    #[test]
    fn dependent_rows_and_free_variables() {
        let mut s = LinearSystem::new(3);
        s.push_row([(0, r(1)), (1, r(1))], r(3));
        s.push_row([(0, r(2)), (1, r(2))], r(6));
        s.push_row([(1, r(1)), (2, r(-1))], r(1));
        let Solution::Solved(x) = s.solve() else { panic!() };
        assert!(s.residual(&x).iter().all(|v| *v == r(0)));
        assert_eq!(x[2], r(0));

        s.push_row([(0, r(1)), (1, r(1))], r(4));
        assert_eq!(s.solve(), Solution::Unsolvable);
    }
}
