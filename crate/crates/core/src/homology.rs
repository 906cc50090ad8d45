//! Integer homology from presentation matrices.
//!
//! A matrix with one row per relation and one column per generator presents
//! `H₁ = Z^cols / (row space)`. Its Smith normal form gives the elementary
//! divisors, and from those the `Z_p` dimensions used by the hypothesis gates.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        let expected = rows.checked_mul(cols).ok_or_else(|| {
            Error::InvalidArgument(format!("matrix dimensions {rows}x{cols} overflow"))
        })?;
        if entries.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "{rows}x{cols} matrix needs {expected} entries, got {}",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[&[T]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| v.into())).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Appends one row.
    pub fn with_row(&self, row: Vec<BigInt>) -> Result<IntegerMatrix> {
        if row.len() != self.cols {
            return Err(Error::InvalidArgument(format!(
                "row of length {} does not fit {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(row);
        Ok(Self {
            rows: self.rows + 1,
            cols: self.cols,
            entries,
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        Ok(sign * &m[n * n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(d) if d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] −= q · row[source]
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self.entries[source * self.cols + j];
            self.entries[target * self.cols + j] -= v;
        }
    }

    /// col[target] −= q · col[source]
    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self.entries[i * self.cols + source];
            self.entries[i * self.cols + target] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.entries[i * self.cols + j]);
            self.entries[i * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Diagonal invariants `d₁ | d₂ | …` of a Smith normal form and the rank of
/// the free part of the cokernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryDivisors {
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
}

impl ElementaryDivisors {
    /// Divisors other than 1, i.e. the torsion coefficients.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.divisors.iter().filter(|d| !d.is_one())
    }
}

impl fmt::Display for ElementaryDivisors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `U`, `D`, `V` with `U·A·V = D` and the invariants read off `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub divisors: ElementaryDivisors,
}

fn smallest_nonzero(
    m: &IntegerMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .min_by(|&(a, b), &(c, d)| m.get(a, b).magnitude().cmp(m.get(c, d).magnitude()))
}

/// Smith normal form with smallest-magnitude pivoting.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let block = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = smallest_nonzero(&d, block) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = d.get(t, t).clone();
            for i in t + 1..rows {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    d.sub_row(i, t, &q);
                    u.sub_row(i, t, &q);
                }
            }
            for j in t + 1..cols {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    d.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                }
            }
            // remainders are smaller than the pivot; move the smallest in
            let line = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            if let Some((i, j)) = smallest_nonzero(&d, line) {
                if j == t {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    // row t += row i puts a non-multiple in row t
                    let minus_one = -BigInt::one();
                    d.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let divisors: Vec<BigInt> = (0..t).map(|i| d.get(i, i).clone()).collect();
    let free_rank = cols - divisors.len();
    SmithForm {
        u,
        d,
        v,
        divisors: ElementaryDivisors { divisors, free_rank },
    }
}

pub fn elementary_divisors(a: &IntegerMatrix) -> ElementaryDivisors {
    smith_normal_form(a).divisors
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// `dim H₁(·; Z_p) = free_rank + #{dᵢ : p | dᵢ}`.
pub fn mod_p_dim(ed: &ElementaryDivisors, p: u64) -> Result<usize> {
    require_prime(p)?;
    let p = BigInt::from(p);
    Ok(ed.free_rank + ed.divisors.iter().filter(|d| d.is_multiple_of(&p)).count())
}

/// Rank of `A` over `Z_p` by plain Gaussian elimination.
pub fn rank_mod_p(a: &IntegerMatrix, p: u64) -> Result<usize> {
    require_prime(p)?;
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|v| v.mod_floor(&pb).to_u64().expect("residue below p"))
                .collect()
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inverse = |x: u64| {
        // Fermat: x^(p−2)
        let (mut base, mut exp, mut acc) = (x, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(pivot) = (rank..a.rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inverse(m[rank][col]);
        for i in 0..a.rows {
            if i != rank && m[i][col] != 0 {
                let factor = mul(m[i][col], inv);
                for j in col..a.cols {
                    let sub = mul(factor, m[rank][j]);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// `dim H₁(·; Z_p)` computed directly from the presentation: `cols − rank_p(A)`.
pub fn mod_p_dim_direct(a: &IntegerMatrix, p: u64) -> Result<usize> {
    Ok(a.cols - rank_mod_p(a, p)?)
}

/// Images of the longitude `λ` and meridian `μ` in the generator basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralData {
    pub lambda_class: Vec<BigInt>,
    pub mu_class: Vec<BigInt>,
}

impl PeripheralData {
    pub fn new(lambda_class: Vec<BigInt>, mu_class: Vec<BigInt>) -> Result<Self> {
        if lambda_class.len() != mu_class.len() {
            return Err(Error::InvalidArgument(format!(
                "lambda has {} coordinates but mu has {}",
                lambda_class.len(),
                mu_class.len()
            )));
        }
        Ok(Self { lambda_class, mu_class })
    }
}

/// Presentation of `H₁` after filling along the slope `aλ + bμ`: the relation
/// `a·λ_class + b·μ_class` is appended.
pub fn fill_slope(a_mat: &IntegerMatrix, per: &PeripheralData, a: i64, b: i64) -> Result<IntegerMatrix> {
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidArgument(format!("slope ({a}, {b}) is not primitive")));
    }
    if per.lambda_class.len() != a_mat.cols {
        return Err(Error::InvalidArgument(format!(
            "peripheral classes have {} coordinates but there are {} generators",
            per.lambda_class.len(),
            a_mat.cols
        )));
    }
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let row = per
        .lambda_class
        .iter()
        .zip(&per.mu_class)
        .map(|(l, m)| &a * l + &b * m)
        .collect();
    a_mat.with_row(row)
}

/// `dim Γ₁/Γ₂ = r(r+1)/2 − t` for the quotient of the mod-2 lower central series.
pub fn gamma_quotient_dim(r: u64, t: u64) -> Result<u64> {
    let max = r
        .checked_mul(r + 1)
        .map(|v| v / 2)
        .ok_or_else(|| Error::InvalidArgument(format!("r = {r} too large")))?;
    max.checked_sub(t).ok_or_else(|| {
        Error::InvalidArgument(format!("cup rank t = {t} exceeds r(r+1)/2 = {max}"))
    })
}

/// Rank lower bound `(m+1)r − m(m+1)/2 − t` for the first homology of a
/// regular `(Z₂)^m` cover.
pub fn cover_rank_bound(r: i64, t: i64, m: i64) -> Result<i64> {
    if !(0 <= m && m <= r) || t < 0 {
        return Err(Error::InvalidArgument(format!(
            "cover bound needs 0 <= m <= r and t >= 0 (r={r}, t={t}, m={m})"
        )));
    }
    let overflow = || Error::InvalidArgument("cover bound overflows".into());
    let lead = (m + 1).checked_mul(r).ok_or_else(overflow)?;
    let tri = m.checked_mul(m + 1).ok_or_else(overflow)? / 2;
    Ok(lead - tri - t)
}

/// Data entering the hypothesis gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInput {
    pub mod_p_dims: BTreeMap<u64, usize>,
    pub cup_rank_t: Option<usize>,
    pub k: u32,
}

impl GateInput {
    pub fn new(mod_p_dims: BTreeMap<u64, usize>, cup_rank_t: Option<usize>, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
        }
        for &p in mod_p_dims.keys() {
            require_prime(p)?;
        }
        if let (Some(t), Some(&dim)) = (cup_rank_t, mod_p_dims.get(&2)) {
            if t > dim * (dim + 1) / 2 {
                return Err(Error::InvalidArgument(format!(
                    "cup rank t = {t} exceeds {} for mod-2 dimension {dim}",
                    dim * (dim + 1) / 2
                )));
            }
        }
        Ok(Self { mod_p_dims, cup_rank_t, k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateResult {
    ASatisfied,
    BSatisfied,
    Both,
    Neither,
    /// Gate (a) fails and the mod-2 dimension is large enough for (b), but no
    /// cup-product rank was supplied.
    BUnknown,
}

impl GateResult {
    pub fn label(self) -> &'static str {
        match self {
            GateResult::ASatisfied => "A_SATISFIED",
            GateResult::BSatisfied => "B_SATISFIED",
            GateResult::Both => "BOTH",
            GateResult::Neither => "NEITHER",
            GateResult::BUnknown => "B_UNKNOWN",
        }
    }

    pub fn a_holds(self) -> bool {
        matches!(self, GateResult::ASatisfied | GateResult::Both)
    }

    pub fn b_holds(self) -> bool {
        matches!(self, GateResult::BSatisfied | GateResult::Both)
    }

    /// 0 for NEITHER, 1 for B_UNKNOWN, 2 for a single gate, 3 for BOTH.
    pub fn strength(self) -> u8 {
        match self {
            GateResult::Neither => 0,
            GateResult::BUnknown => 1,
            GateResult::ASatisfied | GateResult::BSatisfied => 2,
            GateResult::Both => 3,
        }
    }
}

impl fmt::Display for GateResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// (a) some prime has `dim ≥ k + 2`; (b) `dim H₁(·; Z₂) ≥ k + 1` with cup rank `t ≤ k − 2`.
pub fn hypothesis_gate(g: &GateInput) -> GateResult {
    let k = g.k as usize;
    let a = g.mod_p_dims.values().any(|&d| d >= k + 2);
    let dim2_ok = g.mod_p_dims.get(&2).is_some_and(|&d| d > k);
    let b = match g.cup_rank_t {
        Some(t) => Some(dim2_ok && t + 2 <= k),
        None if dim2_ok => None,
        None => Some(false),
    };
    match (a, b) {
        (true, Some(true)) => GateResult::Both,
        (true, _) => GateResult::ASatisfied,
        (false, Some(true)) => GateResult::BSatisfied,
        (false, None) => GateResult::BUnknown,
        (false, Some(false)) => GateResult::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_smith(a: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.divisors.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_and_zero() {
        let s = check_smith(&IntegerMatrix::identity(2));
        assert_eq!(s.divisors.divisors, ints(&[1, 1]));
        assert_eq!(s.divisors.free_rank, 0);
        let s = check_smith(&IntegerMatrix::zeros(2, 2));
        assert!(s.divisors.divisors.is_empty());
        assert_eq!(s.divisors.free_rank, 2);
        let s = check_smith(&IntegerMatrix::zeros(0, 3));
        assert_eq!(s.divisors.free_rank, 3);
    }

    #[test]
    fn two_by_two_example() {
        let s = check_smith(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.divisors.divisors, ints(&[2, 4]));
        assert_eq!(mod_p_dim(&s.divisors, 2).unwrap(), 2);
        assert_eq!(mod_p_dim(&s.divisors, 3).unwrap(), 0);
    }

    #[test]
    fn divisibility_needs_the_fixup_step() {
        // diag(2, 3) is not in normal form; the invariants are (1, 6)
        let s = check_smith(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.divisors.divisors, ints(&[1, 6]));
        let s = check_smith(&m(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]));
        assert_eq!(s.divisors.divisors, ints(&[2, 2, 60]));
    }

    #[test]
    fn mod_p_examples() {
        let ed = elementary_divisors(&m(&[&[2, 0], &[0, 0]]));
        assert_eq!(mod_p_dim(&ed, 2).unwrap(), 2);
        assert_eq!(mod_p_dim(&ed, 3).unwrap(), 1);
        assert!(mod_p_dim(&ed, 4).is_err());
        assert!(mod_p_dim(&ed, 1).is_err());
        let free = ElementaryDivisors { divisors: vec![], free_rank: 4 };
        for p in [2, 3, 5, 7, 101] {
            assert_eq!(mod_p_dim(&free, p).unwrap(), 4);
        }
    }

    #[test]
    fn rank_mod_p_matches_hand_values() {
        let a = m(&[&[2, 4], &[6, 8]]);
        assert_eq!(rank_mod_p(&a, 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&a, 3).unwrap(), 2);
        assert_eq!(rank_mod_p(&m(&[&[1, 2], &[2, 4]]), 5).unwrap(), 1);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(m(&[&[2, 4], &[6, 8]]).determinant().unwrap(), BigInt::from(-8));
        assert_eq!(
            m(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).determinant().unwrap(),
            BigInt::from(-3)
        );
        assert!(IntegerMatrix::identity(0).is_unimodular());
    }

    #[test]
    fn filling_examples() {
        // no relations, H₁ = Z² with basis (λ, μ)
        let empty = IntegerMatrix::zeros(0, 2);
        let per = PeripheralData::new(ints(&[1, 0]), ints(&[0, 1])).unwrap();
        let filled = fill_slope(&empty, &per, 1, 6).unwrap();
        let ed = elementary_divisors(&filled);
        assert_eq!(ed.free_rank, 1);
        assert_eq!(mod_p_dim(&ed, 2).unwrap(), 1);

        // H₁ = Z ⊕ Z/4, λ ↦ (0, 2), μ ↦ (1, 0)
        let a = m(&[&[0, 4]]);
        let per = PeripheralData::new(ints(&[0, 2]), ints(&[1, 0])).unwrap();
        assert_eq!(mod_p_dim(&elementary_divisors(&a), 2).unwrap(), 2);
        let ed = elementary_divisors(&fill_slope(&a, &per, 1, 6).unwrap());
        assert_eq!(mod_p_dim(&ed, 2).unwrap(), 2);
        let ed = elementary_divisors(&fill_slope(&a, &per, 0, 1).unwrap());
        assert_eq!(mod_p_dim(&ed, 2).unwrap(), 1);

        assert!(fill_slope(&a, &per, 2, 4).is_err());
        assert!(fill_slope(&a, &per, 0, 0).is_err());
        let short = PeripheralData::new(ints(&[1]), ints(&[0])).unwrap();
        assert!(fill_slope(&a, &short, 1, 0).is_err());
    }

    #[test]
    fn stallings_formulas() {
        assert_eq!(gamma_quotient_dim(3, 0).unwrap(), 6);
        assert_eq!(gamma_quotient_dim(5, 15).unwrap(), 0);
        assert_eq!(gamma_quotient_dim(7, 1).unwrap(), 27);
        assert!(gamma_quotient_dim(2, 4).is_err());
        assert_eq!(cover_rank_bound(6, 2, 0).unwrap(), 4);
        assert_eq!(cover_rank_bound(5, 2, 1).unwrap(), 7);
        assert_eq!(cover_rank_bound(7, 0, 2).unwrap(), 18);
        assert!(cover_rank_bound(2, 0, 3).is_err());
        for t in 0..10 {
            assert_eq!(gamma_quotient_dim(6, t).unwrap(), 21 - t);
            assert_eq!(cover_rank_bound(6, t as i64, 3).unwrap(), 18 - t as i64);
        }
    }

    fn gate(dims: &[(u64, usize)], t: Option<usize>, k: u32) -> GateResult {
        hypothesis_gate(&GateInput::new(dims.iter().copied().collect(), t, k).unwrap())
    }

    #[test]
    fn gate_examples() {
        assert_eq!(gate(&[(2, 5)], None, 3), GateResult::ASatisfied);
        assert_eq!(gate(&[(2, 4)], Some(1), 3), GateResult::BSatisfied);
        assert_eq!(gate(&[(2, 3)], Some(0), 3), GateResult::Neither);
        assert_eq!(gate(&[(2, 4)], None, 3), GateResult::BUnknown);
        assert_eq!(gate(&[(2, 5)], Some(0), 3), GateResult::Both);
        assert_eq!(gate(&[(3, 5), (2, 4)], Some(2), 3), GateResult::ASatisfied);
        assert!(GateInput::new([(4, 3)].into_iter().collect(), None, 3).is_err());
        assert!(GateInput::new([(2, 2)].into_iter().collect(), Some(4), 3).is_err());
        assert!(GateInput::new(BTreeMap::new(), None, 1).is_err());
    }

    #[test]
    fn display_forms() {
        let ed = elementary_divisors(&m(&[&[0, 4]]));
        assert_eq!(ed.to_string(), "Z/4 + Z");
        assert_eq!(elementary_divisors(&IntegerMatrix::identity(2)).to_string(), "0");
    }
}
