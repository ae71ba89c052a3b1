//! Pauli strings and weighted Pauli sums.
//!
//! Strings are stored in symplectic form: one x-bit and one z-bit per qubit
//! (`I = 00`, `X = 10`, `Z = 01`, `Y = 11`), so multiplication and the
//! commutation tests are a handful of bit operations.
//!
//! Matrix realizations use little-endian basis indexing throughout the crate:
//! bit `j` of a computational-basis index is the state of qubit `j`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Caps, Error, Result};

/// Largest qubit count a [`PauliString`] can address.
pub const MAX_QUBITS: usize = 64;

/// Coefficients at or below this magnitude are dropped by [`PauliSum::simplify`].
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// The 2x2 matrix of this letter.
    pub fn matrix(self) -> DMatrix<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

/// One of the four phases `i^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

/// A tensor product of single-qubit Pauli letters on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        PauliString { n, x: 0, z: 0 }
    }

    pub fn from_bits(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        let mask = mask(n);
        assert!(x & !mask == 0 && z & !mask == 0, "bits beyond qubit count");
        PauliString { n, x, z }
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut p = PauliString::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    /// Builds a string from `(qubit, letter)` pairs; unlisted qubits are identity.
    pub fn from_sparse(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = PauliString::identity(n);
        for &(q, l) in ops {
            if q >= n {
                return Err(Error::domain(format!("qubit {q} out of range for {n} qubits")));
            }
            p.set(q, l);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, letter: Pauli) {
        assert!(qubit < self.n);
        let (x, z) = letter.bits();
        let bit = 1u64 << qubit;
        self.x = (self.x & !bit) | if x { bit } else { 0 };
        self.z = (self.z & !bit) | if z { bit } else { 0 };
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n).map(|q| self.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Bitmask of qubits carrying a non-identity letter.
    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn support(&self) -> Vec<usize> {
        bits_of(self.support_mask())
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    /// `self * other = phase * result`.
    pub fn multiply(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        check_same_n(self.n, other.n)?;
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // P = i^{x.z} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{z1.x2}.
        let k = (self.x & self.z).count_ones() as i64 + (other.x & other.z).count_ones() as i64
            - (x & z).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64;
        Ok((Phase::from_exponent(k), PauliString { n: self.n, x, z }))
    }

    pub fn commutes(&self, other: &PauliString, kind: Commutation) -> Result<bool> {
        check_same_n(self.n, other.n)?;
        Ok(match kind {
            Commutation::Full => {
                ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
            }
            Commutation::Qubitwise => {
                let differ = (self.x ^ other.x) | (self.z ^ other.z);
                differ & self.support_mask() & other.support_mask() == 0
            }
        })
    }

    /// Action on a basis state: `P|i> = phase * |i ^ x>`, returned as `(i ^ x, phase)`.
    #[inline]
    pub fn apply_basis(&self, index: usize) -> (usize, Complex64) {
        let ny = (self.x & self.z).count_ones() as i64;
        let sign = 2 * ((index as u64 & self.z).count_ones() as i64 % 2);
        let phase = Phase::from_exponent(ny + sign);
        (index ^ self.x as usize, phase.to_complex())
    }

    /// Restricts the string to `qubits`, relabelling `qubits[j]` as qubit `j`.
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::identity(qubits.len());
        for (j, &q) in qubits.iter().enumerate() {
            out.set(j, self.get(q));
        }
        out
    }

    /// Places this string (on `qubits.len()` qubits) onto `qubits` of an `n`-qubit register.
    pub fn embed(&self, n: usize, qubits: &[usize]) -> PauliString {
        assert_eq!(self.n, qubits.len());
        let mut out = PauliString::identity(n);
        for (j, &q) in qubits.iter().enumerate() {
            out.set(q, self.get(j));
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (row, ph) = self.apply_basis(col);
            m[(row, col)] = ph;
        }
        m
    }

    /// Sparse label such as `X0 Z3`; empty for the identity.
    pub fn sparse_label(&self) -> String {
        self.support()
            .into_iter()
            .map(|q| format!("{}{}", self.get(q).symbol(), q))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for PauliString {
    /// Lexicographic over letters from qubit 0 upward, with `I < X < Y < Z`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.n.cmp(&other.n) {
            Ordering::Equal => {}
            o => return o,
        }
        let differ = (self.x ^ other.x) | (self.z ^ other.z);
        if differ == 0 {
            return Ordering::Equal;
        }
        let q = differ.trailing_zeros() as usize;
        self.get(q).cmp(&other.get(q))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses a dense letter string such as `XIZY` (qubit 0 first).
    fn from_str(s: &str) -> Result<Self> {
        let letters: Option<Vec<Pauli>> = s.trim().chars().map(Pauli::from_symbol).collect();
        let letters = letters.ok_or_else(|| Error::parse(0, format!("bad Pauli string {s:?}")))?;
        if letters.len() > MAX_QUBITS {
            return Err(Error::Resource(format!("{} qubits exceeds {MAX_QUBITS}", letters.len())));
        }
        Ok(PauliString::from_letters(&letters))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Commutation {
    Full,
    Qubitwise,
}

/// Real-weighted sum of Pauli strings plus an identity offset.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, f64>,
    constant: f64,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_QUBITS);
        PauliSum {
            n,
            terms: BTreeMap::new(),
            constant: 0.0,
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (f64, PauliString)>) -> Result<Self> {
        let mut h = PauliSum::new(n);
        for (c, p) in terms {
            h.add_term(c, p)?;
        }
        h.simplify();
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn set_constant(&mut self, c: f64) {
        self.constant = c;
    }

    pub fn add_constant(&mut self, c: f64) {
        self.constant += c;
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        if p.is_identity() {
            self.constant
        } else {
            self.terms.get(p).copied().unwrap_or(0.0)
        }
    }

    /// Accumulates `c * p`; identity strings go to the constant.
    pub fn add_term(&mut self, c: f64, p: PauliString) -> Result<()> {
        check_same_n(self.n, p.n)?;
        if p.is_identity() {
            self.constant += c;
        } else {
            *self.terms.entry(p).or_insert(0.0) += c;
        }
        Ok(())
    }

    pub fn add_sum(&mut self, other: &PauliSum, scale: f64) -> Result<()> {
        check_same_n(self.n, other.n)?;
        for (p, &c) in &other.terms {
            *self.terms.entry(*p).or_insert(0.0) += scale * c;
        }
        self.constant += scale * other.constant;
        Ok(())
    }

    pub fn scaled(&self, s: f64) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (*p, c * s)).collect(),
            constant: self.constant * s,
        }
    }

    /// Drops terms with `|c| <= 1e-12`.
    pub fn simplify(&mut self) {
        self.terms.retain(|_, c| c.abs() > ZERO_TOL);
    }

    /// Terms in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    /// Terms by descending `|c|`, ties broken by letter order.
    pub fn sorted_terms(&self) -> Vec<(PauliString, f64)> {
        let mut v: Vec<(PauliString, f64)> = self.terms.iter().map(|(p, c)| (*p, *c)).collect();
        v.sort_by(|a, b| {
            b.1.abs()
                .partial_cmp(&a.1.abs())
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(&b.0))
        });
        v
    }

    /// `out += self * v` (constant included), matrix-free.
    pub fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let dim = 1usize << self.n;
        if v.len() != dim || out.len() != dim {
            return Err(Error::domain(format!(
                "vector of length {} does not match {} qubits",
                v.len(),
                self.n
            )));
        }
        if self.constant != 0.0 {
            for (o, a) in out.iter_mut().zip(v) {
                *o += a * self.constant;
            }
        }
        for (p, &c) in &self.terms {
            let xm = p.x as usize;
            let base = Phase::from_exponent((p.x & p.z).count_ones() as i64).to_complex() * c;
            for (i, a) in v.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let odd = (i as u64 & p.z).count_ones() & 1 == 1;
                let val = if odd { -base } else { base };
                out[i ^ xm] += val * a;
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    pub fn to_dense(&self, caps: &Caps) -> Result<DMatrix<Complex64>> {
        caps.check_dense(self.n)?;
        let dim = 1usize << self.n;
        let mut m = DMatrix::from_diagonal_element(dim, dim, Complex64::new(self.constant, 0.0));
        for (p, &c) in &self.terms {
            for col in 0..dim {
                let (row, ph) = p.apply_basis(col);
                m[(row, col)] += ph * c;
            }
        }
        Ok(m)
    }

    pub fn to_sparse(&self, caps: &Caps) -> Result<SparseMatrix> {
        caps.check_sparse(self.n)?;
        let dim = 1usize << self.n;
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        let mut row_entries: BTreeMap<usize, Complex64> = BTreeMap::new();
        for row in 0..dim {
            row_entries.clear();
            if self.constant != 0.0 {
                row_entries.insert(row, Complex64::new(self.constant, 0.0));
            }
            for (p, &c) in &self.terms {
                // P[row, col] with row = col ^ x
                let col = row ^ p.x as usize;
                let (_, ph) = p.apply_basis(col);
                *row_entries.entry(col).or_insert(Complex64::new(0.0, 0.0)) += ph * c;
            }
            for (&c, &v) in &row_entries {
                if v.norm() > 0.0 {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Ok(SparseMatrix {
            dim,
            row_ptr,
            cols,
            vals,
        })
    }

    /// Parses the line-oriented text format (`0.5 X0 Z3`, `#` comments).
    ///
    /// The qubit count comes from a `# n_qubits = N` directive when present,
    /// otherwise from the highest qubit index mentioned.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut parsed: Vec<(f64, Vec<(usize, Pauli)>)> = Vec::new();
        let mut max_q: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let (body, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
                None => (raw, None),
            };
            if let Some(c) = comment {
                if let Some(n) = parse_n_directive(c) {
                    declared = Some(n.map_err(|m| Error::parse(line_no, m))?);
                }
            }
            let mut tokens = body.split_whitespace();
            let Some(coef_tok) = tokens.next() else {
                continue;
            };
            let coef = parse_coefficient(coef_tok).map_err(|m| Error::parse(line_no, m))?;
            let mut ops = Vec::new();
            for tok in tokens {
                let mut chars = tok.chars();
                let letter = chars
                    .next()
                    .and_then(Pauli::from_symbol)
                    .ok_or_else(|| Error::parse(line_no, format!("bad operator token {tok:?}")))?;
                let q: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad qubit index in {tok:?}")))?;
                if q >= MAX_QUBITS {
                    return Err(Error::parse(line_no, format!("qubit {q} beyond {MAX_QUBITS}")));
                }
                if ops.iter().any(|&(p, _)| p == q) {
                    return Err(Error::parse(line_no, format!("qubit {q} repeated")));
                }
                max_q = Some(max_q.map_or(q, |m: usize| m.max(q)));
                ops.push((q, letter));
            }
            parsed.push((coef, ops));
        }
        let n = match (declared, max_q) {
            (Some(n), Some(m)) if m >= n => {
                return Err(Error::parse(0, format!("qubit {m} exceeds declared n_qubits = {n}")))
            }
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => 0,
        };
        let mut h = PauliSum::new(n);
        for (c, ops) in parsed {
            h.add_term(c, PauliString::from_sparse(n, &ops)?)?;
        }
        h.simplify();
        Ok(h)
    }

    /// Writes the text format; coefficients use shortest round-trip notation.
    pub fn to_text(&self) -> String {
        let mut s = format!("# n_qubits = {}\n", self.n);
        if self.constant != 0.0 {
            s.push_str(&format!("{:?}\n", self.constant));
        }
        for (p, c) in self.sorted_terms() {
            s.push_str(&format!("{:?} {}\n", c, p.sparse_label()));
        }
        s
    }

    pub fn max_abs_difference(&self, other: &PauliSum) -> f64 {
        let mut worst = (self.constant - other.constant).abs();
        for (p, c) in &self.terms {
            worst = worst.max((c - other.coefficient(p)).abs());
        }
        for (p, c) in &other.terms {
            worst = worst.max((c - self.coefficient(p)).abs());
        }
        worst
    }
}

fn parse_n_directive(comment: &str) -> Option<std::result::Result<usize, String>> {
    let c = comment.trim();
    let rest = c.strip_prefix("n_qubits")?;
    let rest = rest.trim_start().strip_prefix('=')?;
    Some(
        rest.trim()
            .parse()
            .map_err(|_| format!("bad n_qubits directive {c:?}")),
    )
}

fn parse_coefficient(tok: &str) -> std::result::Result<f64, String> {
    if tok.contains(['j', 'J']) || tok.trim_start_matches(['+', '-']).contains(['+', '-']) && !tok.contains(['e', 'E']) {
        return Err(format!("complex coefficient {tok:?} not allowed; Hamiltonians must be real"));
    }
    tok.parse::<f64>()
        .map_err(|_| format!("bad coefficient {tok:?}"))
}

/// Compressed sparse row matrix with complex entries.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    pub dim: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<Complex64>,
}

impl SparseMatrix {
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        self.cols[range.clone()]
            .binary_search(&col)
            .map(|k| self.vals[range.start + k])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .map(|k| self.vals[k] * v[self.cols[k]])
                    .sum()
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k])] = self.vals[k];
            }
        }
        m
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Pauli sum with complex coefficients; the intermediate form of encoders
/// before the Hermiticity check.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPauliSum {
    n: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl ComplexPauliSum {
    pub fn new(n: usize) -> Self {
        ComplexPauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, c: Complex64) -> Self {
        let mut s = ComplexPauliSum::new(n);
        s.add(c, PauliString::identity(n));
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, c: Complex64, p: PauliString) {
        debug_assert_eq!(p.n(), self.n);
        *self.terms.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn add_sum(&mut self, other: &ComplexPauliSum, scale: Complex64) {
        for (p, c) in &other.terms {
            self.add(c * scale, *p);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Operator product, phases included.
    pub fn mul(&self, other: &ComplexPauliSum) -> ComplexPauliSum {
        let mut out = ComplexPauliSum::new(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (ph, r) = p.multiply(q).expect("matching qubit counts");
                out.add(a * b * ph.to_complex(), r);
            }
        }
        out.prune(0.0);
        out
    }

    /// Relabels onto `qubits` of an `n`-qubit register.
    pub fn embed(&self, n: usize, qubits: &[usize]) -> ComplexPauliSum {
        let mut out = ComplexPauliSum::new(n);
        for (p, c) in &self.terms {
            out.add(*c, p.embed(n, qubits));
        }
        out
    }

    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    /// Converts to a real [`PauliSum`], failing if any imaginary part exceeds `tol`.
    pub fn into_real(self, tol: f64) -> Result<PauliSum> {
        let mut h = PauliSum::new(self.n);
        for (p, c) in self.terms {
            if c.im.abs() > tol {
                return Err(Error::domain(format!(
                    "operator is not Hermitian: term {p} has coefficient {c}"
                )));
            }
            h.add_term(c.re, p)?;
        }
        h.simplify();
        Ok(h)
    }
}

pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits_of(mut m: u64) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::Dimension {
            expected: a,
            found: b,
        })
    } else {
        Ok(())
    }
}
