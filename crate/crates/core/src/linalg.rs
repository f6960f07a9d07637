//! Exact integer and rational linear algebra: arbitrary-precision matrices,
//! Hermite and Smith normal forms, ranks over Q and F_p, and lattices given
//! by canonical HNF bases.
//!
//! Everything here is exact; no floating point is used anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;

/// Converts an i64 slice into big integers.
pub fn to_big(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Converts big integers back to i64, failing on overflow.
pub fn to_i64(v: &[Int]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| i64::try_from(x.clone()).map_err(|_| Error::Overflow))
        .collect()
}

/// A dense rectangular matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(&rows.iter().map(|r| to_big(r)).collect::<Vec<_>>())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_i64_columns(cols: &[Vec<i64>]) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zero(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, Int::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[a] := x*row[a] + y*row[b]
    fn combine_row(&mut self, a: usize, b: usize, x: &Int, y: &Int) {
        for c in 0..self.cols {
            let v = x * self.at(a, c) + y * self.at(b, c);
            self.set(a, c, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c);
            self.set(r, c, v);
        }
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|x| x.is_zero())
    }
}

/// Result of the row Hermite normal form computation.
pub struct HnfResult {
    /// Canonical HNF: pivots positive, entries above a pivot reduced into
    /// `[0, pivot)`, zero rows at the bottom.
    pub h: IntMatrix,
    /// Unimodular transform with `transform * input = h`.
    pub transform: IntMatrix,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form over Z with unimodular row transform.
pub fn row_hnf(m: &IntMatrix) -> HnfResult {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for pc in 0..h.cols() {
        // find a pivot row for this column
        let mut found = None;
        for r in pr..h.rows() {
            if !h.at(r, pc).is_zero() {
                found = Some(r);
                break;
            }
        }
        let Some(r0) = found else { continue };
        h.swap_rows(pr, r0);
        u.swap_rows(pr, r0);
        // clear entries below the pivot with extended gcd steps
        for r in pr + 1..h.rows() {
            if h.at(r, pc).is_zero() {
                continue;
            }
            let a = h.at(pr, pc).clone();
            let b = h.at(r, pc).clone();
            let g = a.extended_gcd(&b);
            let (d, x, y) = (g.gcd, g.x, g.y);
            let am = &a / &d;
            let bm = &b / &d;
            // rows (pr, r) <- (x*pr + y*r, -bm*pr + am*r); determinant 1
            let old_pr = h.row(pr).to_vec();
            let old_r = h.row(r).to_vec();
            for c in 0..h.cols() {
                h.set(pr, c, &x * &old_pr[c] + &y * &old_r[c]);
                h.set(r, c, -&bm * &old_pr[c] + &am * &old_r[c]);
            }
            let up = u.row(pr).to_vec();
            let ur = u.row(r).to_vec();
            for c in 0..u.cols() {
                u.set(pr, c, &x * &up[c] + &y * &ur[c]);
                u.set(r, c, -&bm * &up[c] + &am * &ur[c]);
            }
        }
        if h.at(pr, pc).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = h.at(pr, pc).clone();
        for r in 0..pr {
            let q = h.at(r, pc).div_floor(&pivot);
            if !q.is_zero() {
                let neg_q = -q;
                h.combine_row(r, pr, &Int::one(), &neg_q);
                u.combine_row(r, pr, &Int::one(), &neg_q);
            }
        }
        pivots.push(pc);
        pr += 1;
        if pr == h.rows() {
            break;
        }
    }
    HnfResult {
        h,
        transform: u,
        pivots,
    }
}

/// Diagonal of the Smith normal form of `m` (non-negative, each entry
/// dividing the next, padded with zeros up to `min(rows, cols)`).
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    let mut a = m.clone();
    let n = a.rows().min(a.cols());
    let mut diag = Vec::with_capacity(n);
    let mut top = 0usize;
    while top < a.rows().min(a.cols()) {
        // find any nonzero entry in the remaining block
        let mut pivot = None;
        'search: for r in top..a.rows() {
            for c in top..a.cols() {
                if !a.at(r, c).is_zero() {
                    pivot = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap_rows(top, pr);
        // swap columns top <-> pc
        if pc != top {
            for r in 0..a.rows() {
                let x = a.at(r, top).clone();
                let y = a.at(r, pc).clone();
                a.set(r, top, y);
                a.set(r, pc, x);
            }
        }
        loop {
            // clear column below pivot
            let mut dirty = false;
            for r in top + 1..a.rows() {
                if a.at(r, top).is_zero() {
                    continue;
                }
                let ga = a.at(top, top).clone();
                let gb = a.at(r, top).clone();
                let g = ga.extended_gcd(&gb);
                let (d, x, y) = (g.gcd, g.x, g.y);
                let am = &ga / &d;
                let bm = &gb / &d;
                let old_top = a.row(top).to_vec();
                let old_r = a.row(r).to_vec();
                for c in 0..a.cols() {
                    a.set(top, c, &x * &old_top[c] + &y * &old_r[c]);
                    a.set(r, c, -&bm * &old_top[c] + &am * &old_r[c]);
                }
                dirty = true;
            }
            // clear row right of pivot by working on the transpose columns
            let mut dirty_col = false;
            for c in top + 1..a.cols() {
                if a.at(top, c).is_zero() {
                    continue;
                }
                let ga = a.at(top, top).clone();
                let gb = a.at(top, c).clone();
                let g = ga.extended_gcd(&gb);
                let (d, x, y) = (g.gcd, g.x, g.y);
                let am = &ga / &d;
                let bm = &gb / &d;
                for r in 0..a.rows() {
                    let u = a.at(r, top).clone();
                    let v = a.at(r, c).clone();
                    a.set(r, top, &x * &u + &y * &v);
                    a.set(r, c, -&bm * &u + &am * &v);
                }
                dirty_col = true;
            }
            if !dirty && !dirty_col {
                break;
            }
        }
        diag.push(a.at(top, top).abs());
        top += 1;
    }
    while diag.len() < n {
        diag.push(Int::zero());
    }
    // enforce the divisibility chain d1 | d2 | ...
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            if diag[i].is_zero() && diag[j].is_zero() {
                continue;
            }
            let g = diag[i].gcd(&diag[j]);
            let l = if g.is_zero() {
                Int::zero()
            } else {
                (&diag[i] * &diag[j]) / &g
            };
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Field selector: the rationals (characteristic zero) or F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::NotPrime(characteristic))
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec { characteristic: p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.characteristic == 0 {
            write!(f, "char 0")
        } else {
            write!(f, "char {}", self.characteristic)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of `m` over the field `k`: fraction-free elimination over Q,
/// modular elimination over F_p.
pub fn rank_over_field(m: &IntMatrix, k: FieldSpec) -> usize {
    if k.is_rational() {
        rank_rational(m)
    } else {
        rank_mod_p(m, k.characteristic())
    }
}

pub fn rank_rational(m: &IntMatrix) -> usize {
    // plain integer row elimination with cross-multiplication; rank only
    let mut a = m.clone();
    let mut rank = 0;
    let mut col = 0;
    while rank < a.rows() && col < a.cols() {
        let mut piv = None;
        for r in rank..a.rows() {
            if !a.at(r, col).is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else {
            col += 1;
            continue;
        };
        a.swap_rows(rank, p);
        let lead = a.at(rank, col).clone();
        for r in rank + 1..a.rows() {
            if a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            let old_pivot_row = a.row(rank).to_vec();
            let old_row = a.row(r).to_vec();
            for c in col..a.cols() {
                a.set(r, c, &lead * &old_row[c] - &factor * &old_pivot_row[c]);
            }
            // keep entries small-ish by dividing out the row content
            let mut g = Int::zero();
            for c in col..a.cols() {
                g = g.gcd(a.at(r, c));
            }
            if g > Int::one() {
                for c in col..a.cols() {
                    let v = a.at(r, c) / &g;
                    a.set(r, c, v);
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pp = Int::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| {
                    let v = x.mod_floor(&pp);
                    u64::try_from(v).expect("residue fits u64")
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = m.cols();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let mut piv = None;
        for (r, row) in a.iter().enumerate().take(rows).skip(rank) {
            if row[col] % p != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(pr) = piv else {
            col += 1;
            continue;
        };
        a.swap(rank, pr);
        let inv = mod_inverse(a[rank][col], p);
        for c in col..cols {
            a[rank][c] = mulmod(a[rank][c], inv, p);
        }
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in col..cols {
                    let sub = mulmod(f, a[rank][c], p);
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    result
}

/// Determinant of a square matrix (Bareiss fraction-free elimination).
pub fn determinant(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let mut found = None;
            for r in k + 1..n {
                if !a.at(r, k).is_zero() {
                    found = Some(r);
                    break;
                }
            }
            match found {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, Int::zero());
        }
        prev = a.at(k, k).clone();
    }
    sign * a.at(n - 1, n - 1).clone()
}

/// Basis of the right kernel `{x : m * x = 0}` as matrix rows. The returned
/// lattice is saturated (a direct summand of Z^cols).
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    // Row-reduce the transpose with a transform; transform rows matching
    // zero rows of the HNF span the kernel.
    let t = m.transpose();
    let res = row_hnf(&t);
    let mut rows = Vec::new();
    for r in 0..res.h.rows() {
        if res.h.is_zero_row(r) {
            rows.push(res.transform.row(r).to_vec());
        }
    }
    if rows.is_empty() {
        IntMatrix::zero(0, m.cols())
    } else {
        IntMatrix::from_rows(&rows)
    }
}

/// Divides a vector by the gcd of its entries; zero vectors are unchanged.
pub fn primitive(v: &mut [Int]) {
    let mut g = Int::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g > Int::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// A sublattice of Z^N represented by its canonical row-HNF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// Lattice spanned by the rows of `rows` inside Z^ambient.
    pub fn from_rows(ambient: usize, rows: &IntMatrix) -> Lattice {
        assert!(rows.cols() == ambient || rows.rows() == 0);
        let res = row_hnf(rows);
        let rank = res.pivots.len();
        let basis = IntMatrix::from_rows(&res.h.row_vecs()[..rank]);
        Lattice {
            ambient,
            basis: if rank == 0 {
                IntMatrix::zero(0, ambient)
            } else {
                basis
            },
            pivots: res.pivots,
        }
    }

    pub fn from_i64_rows(ambient: usize, rows: &[Vec<i64>]) -> Lattice {
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        Self::from_rows(ambient, &IntMatrix::from_i64_rows(rows))
    }

    pub fn zero(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: IntMatrix::zero(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Exact membership in the integer row span.
    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let pivot = self.basis.at(r, pc);
            let (q, rem) = w[pc].div_mod_floor(pivot);
            if !rem.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for c in 0..self.ambient {
                    w[c] = &w[c] - &q * self.basis.at(r, c);
                }
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    pub fn contains_i64(&self, v: &[i64]) -> Result<bool> {
        self.contains(&to_big(v))
    }

    /// Canonical representative of `v` modulo the lattice (floor reduction
    /// against the HNF pivots; unique per coset).
    pub fn residue(&self, v: &[Int]) -> Vec<Int> {
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let pivot = self.basis.at(r, pc);
            let q = w[pc].div_floor(pivot);
            if !q.is_zero() {
                for c in 0..self.ambient {
                    w[c] = &w[c] - &q * self.basis.at(r, c);
                }
            }
        }
        w
    }

    /// Coordinates of `v` in the HNF basis, when `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (r, &pc) in self.pivots.iter().enumerate() {
            let pivot = self.basis.at(r, pc);
            let (q, rem) = w[pc].div_mod_floor(pivot);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for c in 0..self.ambient {
                    w[c] = &w[c] - &q * self.basis.at(r, c);
                }
            }
            coords.push(q);
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Smallest lattice containing both operands.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        if rows.is_empty() {
            return Lattice::zero(self.ambient);
        }
        Lattice::from_rows(self.ambient, &IntMatrix::from_rows(&rows))
    }

    /// Saturation inside Z^ambient: all integer points of the rational span.
    pub fn saturation(&self) -> Lattice {
        if self.rank() == 0 {
            return Lattice::zero(self.ambient);
        }
        // span(L) ∩ Z^N is the kernel of pairing with a kernel basis of L
        let k = kernel_basis(&self.basis);
        if k.rows() == 0 {
            return Lattice::full(self.ambient);
        }
        let sat = kernel_basis(&k);
        Lattice::from_rows(self.ambient, &sat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_basis_examples() {
        // rows {(2,0),(0,2),(1,1)} -> basis {(1,1),(0,2)}
        let l = Lattice::from_i64_rows(2, &[vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.basis().row_vecs(), vec![to_big(&[1, 1]), to_big(&[0, 2])]);

        // already in HNF
        let l = Lattice::from_i64_rows(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(l.basis().row_vecs(), vec![to_big(&[1, 0]), to_big(&[0, 1])]);

        // empty row set in Z^2 -> rank-0 lattice
        let l = Lattice::from_i64_rows(2, &[]);
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn lattice_membership_examples() {
        let l = Lattice::from_i64_rows(2, &[vec![1, 1], vec![0, 2]]);
        assert!(!l.contains_i64(&[1, 0]).unwrap());
        assert!(l.contains_i64(&[3, 1]).unwrap());
        assert!(l.contains_i64(&[0, 0]).unwrap());
        assert!(l.contains_i64(&[-1, 0]).is_err() == false);
        assert!(matches!(
            l.contains_i64(&[1, 0, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn residue_is_canonical() {
        let l = Lattice::from_i64_rows(2, &[vec![1, 1], vec![0, 2]]);
        let r1 = l.residue(&to_big(&[5, 3]));
        let r2 = l.residue(&to_big(&[5 + 1, 3 + 1])); // shift by (1,1)
        assert_eq!(r1, r2);
        let r3 = l.residue(&to_big(&[5, 5])); // shift by (0,2)
        assert_eq!(r1, r3);
        let r4 = l.residue(&to_big(&[4, 3]));
        assert_ne!(r1, r4);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_field(&mat(&[&[1, 1], &[1, 1]]), FieldSpec::RATIONALS), 1);
        assert_eq!(
            rank_over_field(&mat(&[&[1, 1], &[1, 1]]), FieldSpec::prime(5).unwrap()),
            1
        );
        assert_eq!(rank_over_field(&mat(&[&[2]]), FieldSpec::prime(2).unwrap()), 0);
        assert_eq!(rank_over_field(&mat(&[&[2]]), FieldSpec::RATIONALS), 1);
    }

    #[test]
    fn field_spec_requires_prime() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(7).is_ok());
        assert!(matches!(FieldSpec::new(6), Err(Error::NotPrime(6))));
        assert!(matches!(FieldSpec::prime(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn smith_diagonal_examples() {
        let d = smith_diagonal(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, vec![Int::from(1), Int::from(6)]);
        let d = smith_diagonal(&mat(&[&[2, 4], &[4, 8]]));
        assert_eq!(d, vec![Int::from(2), Int::from(0)]);
    }

    #[test]
    fn determinant_and_kernel() {
        assert_eq!(determinant(&mat(&[&[1, 2], &[3, 4]])), Int::from(-2));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), Int::from(-1));
        let k = kernel_basis(&mat(&[&[1, 1, 1]]));
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let s: Int = k.row(r).iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn saturation_of_sublattice() {
        // span{(2,2)} saturates to span{(1,1)}
        let l = Lattice::from_i64_rows(2, &[vec![2, 2]]);
        let s = l.saturation();
        assert_eq!(s.basis().row_vecs(), vec![to_big(&[1, 1])]);
    }

    proptest! {
        // HNF canonicity: permuting the rows never changes the basis.
        #[test]
        fn hnf_permutation_invariant(rows in proptest::collection::vec(
            proptest::collection::vec(-6i64..=6, 3), 1..5), seed in 0u64..1000)
        {
            let l1 = Lattice::from_i64_rows(3, &rows);
            let mut permuted = rows.clone();
            let n = permuted.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                permuted.swap(i, j);
            }
            let l2 = Lattice::from_i64_rows(3, &permuted);
            prop_assert_eq!(l1.basis().row_vecs(), l2.basis().row_vecs());
        }

        // rank over Q bounds rank over F_p
        #[test]
        fn rank_drop_mod_p(rows in proptest::collection::vec(
            proptest::collection::vec(-9i64..=9, 4), 1..5))
        {
            let m = IntMatrix::from_i64_rows(&rows);
            let r0 = rank_over_field(&m, FieldSpec::RATIONALS);
            for p in [2u64, 3, 5] {
                let rp = rank_over_field(&m, FieldSpec::prime(p).unwrap());
                prop_assert!(r0 >= rp);
            }
        }

        // lattice membership respects the defining span
        #[test]
        fn lattice_contains_combinations(rows in proptest::collection::vec(
            proptest::collection::vec(-4i64..=4, 3), 1..4),
            coeffs in proptest::collection::vec(-3i64..=3, 4))
        {
            let l = Lattice::from_i64_rows(3, &rows);
            let mut v = vec![0i64; 3];
            for (row, &c) in rows.iter().zip(&coeffs) {
                for i in 0..3 { v[i] += c * row[i]; }
            }
            prop_assert!(l.contains_i64(&v).unwrap());
        }
    }
}
