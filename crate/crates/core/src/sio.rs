//! Local strictly incoherent operators and the SLICC/LICC equivalence solvers.
//!
//! An invertible strictly incoherent qubit operator is `diag(u, v)` or
//! `antidiag(u, v)` (u top-right, v bottom-left). A triple of them permutes
//! basis indices by XOR with its flip mask and multiplies each amplitude by a
//! product of three entries. Writing the six entries as unknowns
//! `(a₁, a₂, b₁, b₂, c₁, c₂)`, the amplitude at support index `k = (x, y, z)` is
//! scaled by `a_{1+x⊕m_A} · b_{1+y⊕m_B} · c_{1+z⊕m_C}`, a monomial whose
//! exponents form one row of the [`ExponentMatrix`].
//!
//! Since ℂ* is divisible, a ratio vector `r` lies in the image of that monomial
//! map exactly when `Π r_k^{u_k} = 1` for every `u` in the integer left kernel.
//! The solvers test those characters for each of the eight masks and, on
//! success, recover explicit entries by back-substitution through the
//! unimodular echelon form.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::SioError;
use crate::lattice::{self, RowEchelon};
use crate::state::{FlipMask, Mat2, Party, SupportPattern, ThreeQubitPureState, EPS_SUPP};

/// Tolerance on `|Π r^u − 1|` and on wrapped phase sums.
pub const CHARACTER_TOL: f64 = 1e-7;
/// Tolerance on `||r_k| − 1|` for the unitary (LICC) case.
pub const MODULUS_TOL: f64 = 1e-7;
/// Relative tolerance of [`verify_witness`].
pub const WITNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Diagonal,
    Antidiagonal,
}

/// `diag(u, v)` or `antidiag(u, v)` with both entries nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SioLocalOperator {
    kind: OperatorKind,
    u: Complex64,
    v: Complex64,
}

impl SioLocalOperator {
    pub fn new(kind: OperatorKind, u: Complex64, v: Complex64) -> Result<Self, SioError> {
        if u.norm() == 0.0 || v.norm() == 0.0 || !u.is_finite() || !v.is_finite() {
            return Err(SioError::Singular(u.norm(), v.norm()));
        }
        Ok(SioLocalOperator { kind, u, v })
    }

    pub fn diagonal(u: Complex64, v: Complex64) -> Result<Self, SioError> {
        Self::new(OperatorKind::Diagonal, u, v)
    }

    pub fn antidiagonal(u: Complex64, v: Complex64) -> Result<Self, SioError> {
        Self::new(OperatorKind::Antidiagonal, u, v)
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        SioLocalOperator {
            kind: OperatorKind::Diagonal,
            u: one,
            v: one,
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn entries(&self) -> (Complex64, Complex64) {
        (self.u, self.v)
    }

    pub fn is_antidiagonal(&self) -> bool {
        self.kind == OperatorKind::Antidiagonal
    }

    /// Factor acquired by the amplitude whose local bit is `bit`.
    pub fn factor(&self, bit: usize) -> Complex64 {
        if bit ^ usize::from(self.is_antidiagonal()) == 0 {
            self.u
        } else {
            self.v
        }
    }

    pub fn matrix(&self) -> Mat2 {
        let z = Complex64::new(0.0, 0.0);
        match self.kind {
            OperatorKind::Diagonal => [[self.u, z], [z, self.v]],
            OperatorKind::Antidiagonal => [[z, self.u], [self.v, z]],
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.u.norm() - 1.0).abs() <= tol && (self.v.norm() - 1.0).abs() <= tol
    }
}

impl fmt::Display for SioLocalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            OperatorKind::Diagonal => "diag",
            OperatorKind::Antidiagonal => "antidiag",
        };
        write!(f, "{name}({}, {})", self.u, self.v)
    }
}

/// One operator per party; the family is read off their kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SioTriple {
    ops: [SioLocalOperator; 3],
}

impl SioTriple {
    pub fn new(a: SioLocalOperator, b: SioLocalOperator, c: SioLocalOperator) -> Self {
        SioTriple { ops: [a, b, c] }
    }

    pub fn identity() -> Self {
        SioTriple {
            ops: [SioLocalOperator::identity(); 3],
        }
    }

    pub fn ops(&self) -> &[SioLocalOperator; 3] {
        &self.ops
    }

    pub fn op(&self, p: Party) -> &SioLocalOperator {
        &self.ops[p.index()]
    }

    pub fn family(&self) -> FlipMask {
        let bits = Party::ALL
            .iter()
            .filter(|p| self.ops[p.index()].is_antidiagonal())
            .fold(0, |m, p| m | p.bit());
        FlipMask::new(bits).expect("three bits")
    }

    /// Product of the three factors hit by basis index `k`.
    pub fn scale(&self, k: usize) -> Complex64 {
        self.ops[0].factor(k >> 2 & 1) * self.ops[1].factor(k >> 1 & 1) * self.ops[2].factor(k & 1)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.ops.iter().all(|o| o.is_unitary(tol))
    }

    pub fn matrices(&self) -> [Mat2; 3] {
        self.ops.map(|o| o.matrix())
    }

    pub fn apply(&self, state: &ThreeQubitPureState) -> ThreeQubitPureState {
        apply_sio_triple(self, state)
    }
}

/// `amp'[k ⊕ family] = scale(k) · amp[k]`.
pub fn apply_sio_triple(triple: &SioTriple, state: &ThreeQubitPureState) -> ThreeQubitPureState {
    let m = triple.family().bits() as usize;
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (k, a) in state.amplitudes().iter().enumerate() {
        amps[k ^ m] = triple.scale(k) * a;
    }
    let out = ThreeQubitPureState::new(amps).expect("invertible operators keep a nonzero state");
    match state.label() {
        Some(l) => out.with_label(l),
        None => out,
    }
}

/// Exponents of `(a₁, a₂, b₁, b₂, c₁, c₂)` for each support index, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    support: SupportPattern,
    family: FlipMask,
    rows: Vec<[i64; 6]>,
}

impl ExponentMatrix {
    pub fn support(&self) -> SupportPattern {
        self.support
    }

    pub fn family(&self) -> FlipMask {
        self.family
    }

    pub fn rows(&self) -> &[[i64; 6]] {
        &self.rows
    }

    pub fn indices(&self) -> Vec<usize> {
        self.support.indices().collect()
    }

    fn as_vecs(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    pub fn echelon(&self) -> RowEchelon {
        lattice::row_echelon(&self.as_vecs())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }
}

pub fn exponent_matrix(support: SupportPattern, family: FlipMask) -> ExponentMatrix {
    let m = family.bits() as usize;
    let rows = support
        .indices()
        .map(|k| {
            let mut row = [0i64; 6];
            row[(k >> 2 & 1) ^ (m >> 2 & 1)] = 1;
            row[2 + ((k >> 1 & 1) ^ (m >> 1 & 1))] = 1;
            row[4 + ((k & 1) ^ (m & 1))] = 1;
            row
        })
        .collect();
    ExponentMatrix {
        support,
        family,
        rows,
    }
}

/// An integer vector over the support annihilating the exponent matrix; it
/// induces the multiplicative invariant `Π amp_k^{u_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KernelCharacter {
    support: SupportPattern,
    exponents: Vec<i64>,
}

impl KernelCharacter {
    pub fn new(support: SupportPattern, exponents: Vec<i64>) -> Self {
        assert_eq!(support.len(), exponents.len());
        KernelCharacter { support, exponents }
    }

    pub fn support(&self) -> SupportPattern {
        self.support
    }

    /// Exponents aligned with the ascending support indices.
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Exponents spread over all eight basis indices.
    pub fn by_basis_index(&self) -> [i64; 8] {
        let mut out = [0; 8];
        for (k, e) in self.support.indices().zip(&self.exponents) {
            out[k] = *e;
        }
        out
    }

    /// `Σ u_k log z_k`, the logarithm of the character at `z` (one value per support element).
    pub fn log_value(&self, values: &[Complex64]) -> Complex64 {
        self.exponents
            .iter()
            .zip(values)
            .map(|(&e, z)| e as f64 * z.ln())
            .sum()
    }
}

pub fn kernel_characters(m: &ExponentMatrix) -> Vec<KernelCharacter> {
    lattice::integer_left_kernel(&m.as_vecs())
        .into_iter()
        .map(|u| KernelCharacter::new(m.support, u))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceWitness {
    pub triple: SioTriple,
    pub global_scale: Complex64,
}

impl EquivalenceWitness {
    pub fn identity() -> Self {
        EquivalenceWitness {
            triple: SioTriple::identity(),
            global_scale: Complex64::new(1.0, 0.0),
        }
    }

    pub fn family(&self) -> FlipMask {
        self.triple.family()
    }
}

/// Why no family succeeded, naming the furthest stage any family reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mismatch {
    /// No mask maps one support onto the other.
    Support,
    /// Supports match but some amplitude ratio is not unimodular (LICC only).
    Modulus,
    /// Supports match but a kernel character (or its phase) differs.
    Invariant,
}

impl Mismatch {
    pub fn reason(self) -> &'static str {
        match self {
            Mismatch::Support => "support mismatch",
            Mismatch::Modulus => "modulus mismatch",
            Mismatch::Invariant => "invariant mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Equivalent(EquivalenceWitness),
    NotEquivalent(Mismatch),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&EquivalenceWitness> {
        match self {
            Verdict::Equivalent(w) => Some(w),
            Verdict::NotEquivalent(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Slicc,
    Licc,
}

/// Wraps an angle to (−π, π].
fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Solves `Π_j x_j^{M_kj} = r_k` for the six entries, given that every kernel
/// character already evaluates to one. Free entries are fixed to 1.
fn solve_entries(ech: &RowEchelon, ratios: &[Complex64]) -> [Complex64; 6] {
    let one = Complex64::new(1.0, 0.0);
    let mut x = [one; 6];
    for (row, &col) in ech.pivots.iter().enumerate().rev() {
        let target: Complex64 = ech.transform[row]
            .iter()
            .zip(ratios)
            .fold(one, |acc, (&e, r)| acc * r.powi(e as i32));
        let h = &ech.reduced[row];
        let known = (col + 1..6).fold(one, |acc, j| acc * x[j].powi(h[j] as i32));
        let rhs = target / known;
        x[col] = if h[col] == 1 {
            rhs
        } else {
            rhs.powf(1.0 / h[col] as f64)
        };
    }
    x
}

fn attempt(
    psi: &ThreeQubitPureState,
    phi: &ThreeQubitPureState,
    family: FlipMask,
    mode: Mode,
    eps_supp: f64,
) -> Result<EquivalenceWitness, Mismatch> {
    let support = psi.support(eps_supp);
    if support.flipped(family) != phi.support(eps_supp) {
        return Err(Mismatch::Support);
    }
    let m = family.bits() as usize;
    let (src, dst) = match mode {
        Mode::Slicc => (psi.clone(), phi.clone()),
        Mode::Licc => (psi.normalize(), phi.normalize()),
    };
    let mut ratios: Vec<Complex64> = support
        .indices()
        .map(|k| dst.amp(k ^ m) / src.amp(k))
        .collect();
    if mode == Mode::Licc {
        if ratios.iter().any(|r| (r.norm() - 1.0).abs() > MODULUS_TOL) {
            return Err(Mismatch::Modulus);
        }
        for r in ratios.iter_mut() {
            *r /= r.norm();
        }
    }

    let exps = exponent_matrix(support, family);
    let ech = exps.echelon();
    for u in ech.kernel_rows() {
        let log: Complex64 = u
            .iter()
            .zip(&ratios)
            .map(|(&e, r)| e as f64 * r.ln())
            .sum();
        let ok = match mode {
            Mode::Slicc => (log.exp() - 1.0).norm() <= CHARACTER_TOL,
            Mode::Licc => wrap_angle(log.im).abs() <= CHARACTER_TOL,
        };
        if !ok {
            return Err(Mismatch::Invariant);
        }
    }

    let x = solve_entries(&ech, &ratios);
    let kind = |p: Party| {
        if family.flips(p) {
            OperatorKind::Antidiagonal
        } else {
            OperatorKind::Diagonal
        }
    };
    let op = |p: Party, u: Complex64, v: Complex64| {
        SioLocalOperator::new(kind(p), u, v).map_err(|_| Mismatch::Invariant)
    };
    let triple = SioTriple::new(
        op(Party::A, x[0], x[1])?,
        op(Party::B, x[2], x[3])?,
        op(Party::C, x[4], x[5])?,
    );
    let global_scale = match mode {
        Mode::Slicc => Complex64::new(1.0, 0.0),
        Mode::Licc => Complex64::new(phi.norm() / psi.norm(), 0.0),
    };
    let witness = EquivalenceWitness {
        triple,
        global_scale,
    };
    if verify_witness(&witness, psi, phi) {
        Ok(witness)
    } else {
        Err(Mismatch::Invariant)
    }
}

/// Tries the eight families in ascending mask order; the first success wins.
pub fn solve_equivalence(
    psi: &ThreeQubitPureState,
    phi: &ThreeQubitPureState,
    mode: Mode,
    eps_supp: f64,
) -> Verdict {
    let mut furthest = Mismatch::Support;
    for family in FlipMask::all() {
        match attempt(psi, phi, family, mode, eps_supp) {
            Ok(w) => return Verdict::Equivalent(w),
            Err(e) => furthest = furthest.max(e),
        }
    }
    Verdict::NotEquivalent(furthest)
}

/// Decides SLICC equivalence: related by invertible local strictly incoherent operators.
pub fn solve_slicc_equivalence(psi: &ThreeQubitPureState, phi: &ThreeQubitPureState) -> Verdict {
    solve_equivalence(psi, phi, Mode::Slicc, EPS_SUPP)
}

/// Decides LICC equivalence: related by local incoherent unitaries (up to normalization).
pub fn solve_licc_equivalence(psi: &ThreeQubitPureState, phi: &ThreeQubitPureState) -> Verdict {
    solve_equivalence(psi, phi, Mode::Licc, EPS_SUPP)
}

/// `global_scale · (A⊗B⊗C) psi = phi` entrywise, relative to the largest modulus of `phi`.
pub fn verify_witness(
    witness: &EquivalenceWitness,
    psi: &ThreeQubitPureState,
    phi: &ThreeQubitPureState,
) -> bool {
    let image = apply_sio_triple(&witness.triple, psi);
    let scale = phi.max_modulus();
    image
        .amplitudes()
        .iter()
        .zip(phi.amplitudes())
        .all(|(a, b)| (witness.global_scale * a - b).norm() <= WITNESS_TOL * scale)
}
