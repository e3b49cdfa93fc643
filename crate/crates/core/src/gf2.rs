//! Dense linear algebra over the two-element field.
//!
//! Rows are bit-packed into `u64` words. Elimination always pivots on the
//! lowest-index nonzero row at or below the current position, so every
//! derived basis (kernels, reduced row echelon forms) is a deterministic
//! function of the input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("matrix is singular over F2")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cannot parse bit string: {0}")]
    Parse(String),
}

/// A vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at `indices`.
    pub fn from_support(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// The sub-vector at the given positions, in the order given.
    pub fn select(&self, indices: &[usize]) -> BitVector {
        BitVector::from_bits(indices.iter().map(|&i| self.get(i)))
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bits(self.iter().chain(other.iter()))
    }

    fn lowest_set_from(&self, start: usize) -> Option<usize> {
        (start..self.len).find(|&i| self.get(i))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    /// Accepts `0`/`1` characters, optionally separated by whitespace or commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == ',' => {}
                other => return Err(Gf2Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        Ok(BitVector::from_bits(bits))
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A dense, row-major matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

/// Result of Gauss-Jordan elimination.
struct Reduced {
    /// Reduced row echelon form; zero rows trail.
    rref: BitMatrix,
    /// Pivot column of each nonzero row of `rref`.
    pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from explicit rows. `cols` is needed for the
    /// zero-row case and is checked against every row.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::ShapeMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self { rows, cols })
    }

    /// Parses one row per line; blank lines are skipped.
    pub fn parse_rows(text: &str) -> Result<Self, Gf2Error> {
        let rows: Vec<BitVector> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        let cols = rows.first().map_or(0, BitVector::len);
        Self::from_rows(cols, rows)
    }

    /// Builds a matrix from a nested slice of 0/1 entries. Panics on ragged input.
    pub fn from_nested<R: AsRef<[u8]>>(entries: &[R]) -> Self {
        let cols = entries.first().map_or(0, |r| r.as_ref().len());
        let rows = entries
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), cols, "ragged matrix literal");
                BitVector::from_bits(r.iter().map(|&b| b != 0))
            })
            .collect();
        Self { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_row_vectors(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows() {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols,
                other.rows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows,
            cols: other.cols,
        })
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if self.cols != v.len() {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.rows(),
                self.cols,
                v.len()
            )));
        }
        Ok(BitVector::from_bits(self.rows.iter().map(|r| r.dot(v))))
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows() != other.rows() || self.cols != other.cols {
            return Err(Gf2Error::ShapeMismatch(
                "cannot add matrices of different shape".into(),
            ));
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.xor(b)).collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot stack {} columns over {} columns",
                self.cols, other.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows() != other.rows() {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot join {} rows beside {} rows",
                self.rows(),
                other.rows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols + other.cols,
        })
    }

    /// The submatrix on the given rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: rows.iter().map(|&r| self.rows[r].select(cols)).collect(),
            cols: cols.len(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
            cols: self.cols,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows()).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn diagonal(&self) -> BitVector {
        let n = self.rows().min(self.cols);
        BitVector::from_bits((0..n).map(|i| self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    fn reduce(&self) -> Reduced {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.rows() {
                break;
            }
            let Some(p) = (r..m.rows()).find(|&i| m.rows[i].get(c)) else {
                continue;
            };
            m.rows.swap(r, p);
            let pivot_row = m.rows[r].clone();
            for (i, row) in m.rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Reduced { rref: m, pivots }
    }

    /// Row rank over F2. The empty matrix has rank 0.
    pub fn rank(&self) -> usize {
        self.reduce().pivots.len()
    }

    /// Reduced row echelon form with zero rows removed: the canonical basis
    /// of the row space.
    pub fn rref(&self) -> BitMatrix {
        let Reduced { rref, pivots } = self.reduce();
        BitMatrix {
            rows: rref.rows.into_iter().take(pivots.len()).collect(),
            cols: self.cols,
        }
    }

    pub fn invert(&self) -> Result<BitMatrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows(),
                self.cols
            )));
        }
        let n = self.cols;
        if n == 0 {
            return Ok(BitMatrix::zeros(0, 0));
        }
        let augmented = self.hstack(&BitMatrix::identity(n))?;
        let Reduced { rref, pivots } = augmented.reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Gf2Error::Singular);
        }
        let right: Vec<usize> = (n..2 * n).collect();
        let all_rows: Vec<usize> = (0..n).collect();
        Ok(rref.select(&all_rows, &right))
    }

    /// Basis of the null space `{x : self * x = 0}`. One vector per free
    /// column, in ascending column order; each has a one at its free column
    /// and zeros at every other free column.
    pub fn kernel(&self) -> Vec<BitVector> {
        let Reduced { rref, pivots } = self.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if rref.rows[row].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Kernel basis packed as the rows of a matrix.
    pub fn kernel_matrix(&self) -> BitMatrix {
        BitMatrix {
            rows: self.kernel(),
            cols: self.cols,
        }
    }

    /// Whether `v` is an F2 linear combination of the rows.
    pub fn in_span(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::ShapeMismatch(format!(
                "vector of length {} against rows of length {}",
                v.len(),
                self.cols
            )));
        }
        let basis = self.rref();
        let mut residue = v.clone();
        for row in basis.rows.iter() {
            let pivot = row.lowest_set_from(0).expect("rref rows are nonzero");
            if residue.get(pivot) {
                residue.xor_assign(row);
            }
        }
        Ok(residue.is_zero())
    }

    /// Whether `self * x = 0` forces `x = 0`.
    pub fn solve_homogeneous(&self) -> bool {
        self.rank() == self.cols
    }

    /// Whether both matrices have the same row space.
    pub fn same_row_span(&self, other: &BitMatrix) -> bool {
        self.cols == other.cols && self.rref() == other.rref()
    }

    /// Dimension of the intersection of the two row spaces.
    pub fn row_span_intersection_dim(&self, other: &BitMatrix) -> Result<usize, Gf2Error> {
        let joint = self.vstack(other)?;
        Ok(self.rank() + other.rank() - joint.rank())
    }

    /// Renders rows as space-separated digits, one row per line.
    pub fn to_spaced_string(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|b| if b { "1" } else { "0" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols,
            data: self.rows.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows {
            return Err(serde::de::Error::custom(format!(
                "declared {} rows but found {}",
                repr.rows,
                repr.data.len()
            )));
        }
        BitMatrix::from_rows(repr.cols, repr.data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse_rows(&rows.join("\n")).unwrap()
    }

    /// Rank by exhaustive enumeration of the row space: 2^rank distinct vectors.
    fn brute_rank(a: &BitMatrix) -> usize {
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << a.rows()) {
            let mut acc = BitVector::zeros(a.cols());
            for r in 0..a.rows() {
                if mask >> r & 1 == 1 {
                    acc.xor_assign(a.row(r));
                }
            }
            span.insert(acc);
        }
        span.len().trailing_zeros() as usize
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
                BitMatrix::from_rows(c, rows.into_iter().map(BitVector::from_bits).collect()).unwrap()
            })
        })
    }

    /// Random invertible matrix: random row additions and swaps applied to I.
    fn arb_invertible(max_n: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..4 * n).prop_map(move |ops| {
                let mut a = BitMatrix::identity(n);
                for (i, j, swap) in ops {
                    if swap {
                        a.rows.swap(i, j);
                    } else if i != j {
                        let src = a.rows[j].clone();
                        a.rows[i].xor_assign(&src);
                    }
                }
                a
            })
        })
    }

    #[test]
    fn identity_rank_and_inverse() {
        let id = BitMatrix::identity(8);
        assert_eq!(id.rank(), 8);
        assert_eq!(id.invert().unwrap(), id);
        assert!(id.kernel().is_empty());
        assert!(id.solve_homogeneous());
    }

    #[test]
    fn zero_matrix_is_singular() {
        assert_eq!(BitMatrix::zeros(2, 2).invert(), Err(Gf2Error::Singular));
    }

    #[test]
    fn repetition_parity_check() {
        let a = m(&["11"]);
        assert_eq!(a.kernel(), vec!["11".parse::<BitVector>().unwrap()]);
        assert!(!a.solve_homogeneous());
    }

    #[test]
    fn empty_matrix_semantics() {
        let a = BitMatrix::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel().len(), 3);
        assert!(!a.solve_homogeneous());
        let b = BitMatrix::zeros(4, 0);
        assert_eq!(b.rank(), 0);
        assert!(b.kernel().is_empty());
        assert!(b.solve_homogeneous());
        assert!(BitMatrix::zeros(0, 0).invert().unwrap().rows() == 0);
    }

    #[test]
    fn in_span_basics() {
        let a = m(&["1100", "0110"]);
        assert!(a.in_span(&BitVector::zeros(4)).unwrap());
        assert!(a.in_span(&"1010".parse().unwrap()).unwrap());
        assert!(!a.in_span(&"0001".parse().unwrap()).unwrap());
        assert!(a.in_span(&BitVector::zeros(3)).is_err());
    }

    #[test]
    fn kernel_is_deterministic_and_reduced() {
        let a = m(&["1010", "0110"]);
        let k = a.kernel();
        assert_eq!(k, vec!["1110".parse().unwrap(), "0001".parse().unwrap()]);
    }

    #[test]
    fn non_square_inverse_is_shape_error() {
        assert!(matches!(
            BitMatrix::zeros(2, 3).invert(),
            Err(Gf2Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn wide_rows_span_multiple_words() {
        let n = 130;
        let mut a = BitMatrix::identity(n);
        a.set(0, 129, true);
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(n));
        assert!(inv.get(0, 129));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let a = m(&["1 0 1", "0 1 1"]);
        assert_eq!(a.to_string(), "101\n011");
        assert_eq!(BitMatrix::parse_rows(&a.to_spaced_string()).unwrap(), a);
        assert!(BitMatrix::parse_rows("10\n1").is_err());
        assert!(BitMatrix::parse_rows("1x").is_err());
    }

    proptest! {
        #[test]
        fn rank_matches_enumeration(a in arb_matrix(7, 9)) {
            prop_assert_eq!(a.rank(), brute_rank(&a));
            prop_assert!(a.rank() <= a.rows().min(a.cols()));
        }

        #[test]
        fn rank_nullity(a in arb_matrix(10, 10)) {
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.len(), a.cols());
            for x in &k {
                prop_assert!(a.mul_vec(x).unwrap().is_zero());
            }
            let km = BitMatrix::from_rows(a.cols(), k.clone()).unwrap();
            prop_assert_eq!(km.rank(), k.len());
            prop_assert_eq!(a.solve_homogeneous(), k.is_empty());
        }

        #[test]
        fn inverse_identities(a in arb_invertible(12)) {
            let inv = a.invert().unwrap();
            let id = BitMatrix::identity(a.rows());
            prop_assert_eq!(a.mul(&inv).unwrap(), id.clone());
            prop_assert_eq!(inv.mul(&a).unwrap(), id);
        }

        #[test]
        fn singular_matrices_report_singular(a in arb_invertible(10), r in 0usize..10, s in 0usize..10) {
            let n = a.rows();
            let (r, s) = (r % n, s % n);
            let mut b = a.clone();
            if n == 1 {
                b = BitMatrix::zeros(1, 1);
            } else if r == s {
                b.rows[r] = BitVector::zeros(n);
            } else {
                b.rows[r] = b.rows[s].clone();
            }
            prop_assert_eq!(b.invert(), Err(Gf2Error::Singular));
        }

        #[test]
        fn span_membership_of_combinations(a in arb_matrix(6, 8), mask in any::<u8>()) {
            let mut v = BitVector::zeros(a.cols());
            for r in 0..a.rows() {
                if mask >> r & 1 == 1 {
                    v.xor_assign(a.row(r));
                }
            }
            prop_assert!(a.in_span(&v).unwrap());
            prop_assert!(a.same_row_span(&a.rref()));
        }
    }
}
