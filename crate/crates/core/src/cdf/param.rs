//! The monomial parametrization of a model in cdf coordinates and its
//! integer matrix.
//!
//! Each cdf coordinate `q_i` maps to `t * prod_j theta^(pi_j)_(i on pi_j)`
//! where `pi_1 | ... | pi_k` splits `supp(i)` into maximal connected sets.
//! Rows of the matrix are the parameters, columns the index vectors.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed};

use super::connectivity::Connectivity;
use super::tensor::{IndexVector, Rational, RationalTensor, StateShape};
use crate::closure::SplitClosedIdeal;
use crate::error::{Error, Result};
use crate::partition::GroundSet;

/// A parameter of the monomial map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ParamRow {
    /// Homogenizing parameter; every column uses it once.
    T,
    /// `theta^(set)_state` for a connected set and an index whose support is
    /// exactly that set.
    Theta { set: GroundSet, state: IndexVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatrix {
    shape: StateShape,
    rows: Vec<ParamRow>,
    columns: Vec<IndexVector>,
    entries: Vec<Vec<u32>>,
    column_of: HashMap<IndexVector, usize>,
}

/// Builds the 0/1 parametrization matrix of `ideal` over `shape`.
pub fn param_matrix(ideal: &SplitClosedIdeal, shape: &StateShape) -> ParamMatrix {
    assert_eq!(ideal.n(), shape.n(), "ideal and shape disagree on n");
    let conn = Connectivity::new(ideal);

    let mut rows = vec![ParamRow::T];
    for set in conn.connected_sets() {
        for state in shape.indices_with_support(set) {
            rows.push(ParamRow::Theta { set, state });
        }
    }
    let row_of: HashMap<ParamRow, usize> = rows
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, r)| (r, k))
        .collect();

    let mut columns: Vec<IndexVector> = shape.indices().collect();
    columns.sort_by(|a, b| {
        let (sa, sb) = (shape.support(a), shape.support(b));
        sa.len()
            .cmp(&sb.len())
            .then(sa.lex_cmp(sb))
            .then(shape.offset(a).cmp(&shape.offset(b)))
    });

    let mut entries = vec![vec![0u32; columns.len()]; rows.len()];
    for (c, i) in columns.iter().enumerate() {
        entries[0][c] = 1;
        for &piece in conn.decompose(shape.support(i)).blocks() {
            let row = ParamRow::Theta {
                set: piece,
                state: shape.restrict(i, piece),
            };
            entries[row_of[&row]][c] += 1;
        }
    }
    let column_of = columns
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, c)| (c, k))
        .collect();
    ParamMatrix {
        shape: shape.clone(),
        rows,
        columns,
        entries,
        column_of,
    }
}

impl ParamMatrix {
    pub fn shape(&self) -> &StateShape {
        &self.shape
    }

    pub fn rows(&self) -> &[ParamRow] {
        &self.rows
    }

    pub fn columns(&self) -> &[IndexVector] {
        &self.columns
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row][col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn column_index(&self, i: &IndexVector) -> Option<usize> {
        self.column_of.get(i).copied()
    }

    /// Column `col` as an integer vector.
    pub fn column(&self, col: usize) -> Vec<u32> {
        self.entries.iter().map(|row| row[col]).collect()
    }

    pub fn row_label(&self, row: usize) -> String {
        match &self.rows[row] {
            ParamRow::T => "t".into(),
            ParamRow::Theta { set, state } => {
                let name = if self.shape.n() <= 9 {
                    set.to_text(true)
                } else {
                    set.to_text(false)
                };
                if self.shape.is_binary() {
                    format!("theta_{name}")
                } else {
                    let states: Vec<String> = set
                        .iter()
                        .map(|v| state.values()[v - 1].to_string())
                        .collect();
                    format!("theta_{name}[{}]", states.join(":"))
                }
            }
        }
    }

    pub fn column_label(&self, col: usize) -> String {
        self.shape.label(&self.columns[col])
    }

    /// CSV: a header of column labels, then one labeled line per row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<String> = std::iter::once(String::new())
            .chain((0..self.num_columns()).map(|c| self.column_label(c)))
            .collect();
        w.write_record(&header).expect("in-memory write");
        for (r, row) in self.entries.iter().enumerate() {
            let record: Vec<String> = std::iter::once(self.row_label(r))
                .chain(row.iter().map(|x| x.to_string()))
                .collect();
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Bare integer block: a `rows cols` line followed by one
    /// space-separated line per row.
    pub fn to_plain(&self) -> String {
        let mut out = format!("{} {}\n", self.num_rows(), self.num_columns());
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Looks up a binary-shape column by support label such as `q_134` or
    /// `q` (empty support).
    pub fn binary_column(&self, label: &str) -> Result<IndexVector> {
        let unknown = || Error::UnknownColumn(label.to_string());
        if !self.shape.is_binary() {
            return Err(unknown());
        }
        let digits = match label.trim() {
            "q" => "",
            other => other.strip_prefix("q_").ok_or_else(unknown)?,
        };
        let mut set = GroundSet::EMPTY;
        for c in digits.chars() {
            let v = c.to_digit(10).ok_or_else(unknown)? as usize;
            if v == 0 || v > self.shape.n() {
                return Err(unknown());
            }
            set = set.union(GroundSet::singleton(v));
        }
        Ok(self.shape.index_from_support(set))
    }
}

impl fmt::Display for ParamMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (0..self.num_columns())
            .map(|c| self.column_label(c).len())
            .max()
            .unwrap_or(1);
        let label_width = (0..self.num_rows())
            .map(|r| self.row_label(r).len())
            .max()
            .unwrap_or(1);
        write!(f, "{:label_width$}", "")?;
        for c in 0..self.num_columns() {
            write!(f, " {:>width$}", self.column_label(c))?;
        }
        writeln!(f)?;
        for (r, row) in self.entries.iter().enumerate() {
            write!(f, "{:label_width$}", self.row_label(r))?;
            for x in row {
                write!(f, " {x:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `q_i = prod_rows theta_row^A[row, i]`, laid out as a cdf tensor.
pub fn evaluate_parametrization(a: &ParamMatrix, theta: &[Rational]) -> Result<RationalTensor> {
    if theta.len() != a.num_rows() {
        return Err(Error::ParameterCount {
            expected: a.num_rows(),
            got: theta.len(),
        });
    }
    if let Some(bad) = theta.iter().position(|x| !x.is_positive()) {
        return Err(Error::NonPositiveParameter(a.row_label(bad)));
    }
    let mut q = RationalTensor::zeros(a.shape.clone());
    for (c, i) in a.columns.iter().enumerate() {
        let mut value = Rational::one();
        for (r, row) in a.entries.iter().enumerate() {
            for _ in 0..row[c] {
                value *= &theta[r];
            }
        }
        q.set(i, value);
    }
    Ok(q)
}

/// Whether `prod q_plus - prod q_minus` lies in the kernel of the
/// parametrization, i.e. both monomials have the same exponent vector in
/// every parameter row.
pub fn binomial_in_kernel(
    a: &ParamMatrix,
    mono_plus: &[IndexVector],
    mono_minus: &[IndexVector],
) -> Result<bool> {
    let exponents = |mono: &[IndexVector]| -> Result<Vec<u64>> {
        let mut sum = vec![0u64; a.num_rows()];
        for i in mono {
            let c = a
                .column_index(i)
                .ok_or_else(|| Error::UnknownColumn(i.to_string()))?;
            for (s, row) in sum.iter_mut().zip(&a.entries) {
                *s += u64::from(row[c]);
            }
        }
        Ok(sum)
    };
    Ok(exponents(mono_plus)? == exponents(mono_minus)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{closure, StatementSet};
    use num_bigint::BigInt;

    fn ideal(text: &str, n: usize) -> SplitClosedIdeal {
        closure(&StatementSet::parse(text, n).unwrap())
    }

    #[test]
    fn everything_connected_on_two() {
        let a = param_matrix(&SplitClosedIdeal::empty(2), &StateShape::binary(2));
        let labels: Vec<String> = (0..a.num_rows()).map(|r| a.row_label(r)).collect();
        assert_eq!(labels, ["t", "theta_1", "theta_2", "theta_12"]);
        assert_eq!(a.num_columns(), 4);
        for c in 0..4 {
            let support_rows = a.column(c)[1..].iter().sum::<u32>();
            let expected = if c == 0 { 0 } else { 1 };
            assert_eq!(support_rows, expected);
            assert_eq!(a.entry(0, c), 1);
        }
        // the all-max column is the t unit vector
        assert_eq!(a.column(0), vec![1, 0, 0, 0]);
    }

    #[test]
    fn evaluation_rejects_bad_parameters() {
        let a = param_matrix(&SplitClosedIdeal::empty(2), &StateShape::binary(2));
        let one = Rational::one();
        assert!(matches!(
            evaluate_parametrization(&a, &[one.clone()]),
            Err(Error::ParameterCount { .. })
        ));
        let zero = Rational::from_integer(BigInt::from(0));
        assert!(matches!(
            evaluate_parametrization(&a, &[one.clone(), zero, one.clone(), one.clone()]),
            Err(Error::NonPositiveParameter(_))
        ));
        let q = evaluate_parametrization(&a, &vec![one; 4]).unwrap();
        assert!(q.entries().iter().all(|x| x.is_one()));
    }

    #[test]
    fn kernel_membership() {
        let a = param_matrix(&ideal("1|2|34", 4), &StateShape::binary(4));
        let col = |s: &str| a.binary_column(s).unwrap();
        assert!(binomial_in_kernel(
            &a,
            &[col("q_134"), col("q_234")],
            &[col("q_34"), col("q_1234")]
        )
        .unwrap());
        assert!(
            binomial_in_kernel(&a, &[col("q_12"), col("q_34")], &[col("q"), col("q_1234")])
                .unwrap()
        );
        assert!(
            !binomial_in_kernel(&a, &[col("q_1"), col("q_2")], &[col("q_1"), col("q_3")]).unwrap()
        );
        assert!(matches!(
            binomial_in_kernel(&a, &[IndexVector(vec![3, 1, 1, 1])], &[]),
            Err(Error::UnknownColumn(_))
        ));
        assert!(a.binary_column("q_5").is_err());
    }

    #[test]
    fn general_shape_labels() {
        let shape = StateShape::parse("2,3").unwrap();
        let a = param_matrix(&ideal("1|2", 2), &shape);
        let labels: Vec<String> = (0..a.num_rows()).map(|r| a.row_label(r)).collect();
        assert_eq!(labels, ["t", "theta_1[1]", "theta_2[1]", "theta_2[2]"]);
        assert_eq!(a.num_columns(), 6);
    }
}
