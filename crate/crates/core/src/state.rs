//! Pure three-qubit states in the computational basis.
//!
//! Basis index `k = 4x + 2y + z` stands for the ket `|xyz⟩`, so party A owns the
//! most significant bit. Amplitudes are stored unnormalized; [`ThreeQubitPureState::normalize`]
//! is explicit.

use std::fmt;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::StateError;

/// Relative threshold separating genuine zeros from floating-point dust.
pub const EPS_SUPP: f64 = 1e-9;
/// Eigenvalue threshold for single-qubit local ranks.
pub const EPS_RANK: f64 = 1e-9;
/// Moduli below this count as exact zeros when parsing.
const ZERO_MODULUS: f64 = 1e-15;

/// 2×2 complex matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

/// Numerical thresholds shared by classification and solving.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub supp: f64,
    pub rank: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            supp: EPS_SUPP,
            rank: EPS_RANK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// The bit of the basis index that this party's qubit occupies.
    pub fn bit(self) -> u8 {
        match self {
            Party::A => 0b100,
            Party::B => 0b010,
            Party::C => 0b001,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> char {
        match self {
            Party::A => 'A',
            Party::B => 'B',
            Party::C => 'C',
        }
    }
}

/// A subset of the three parties, stored with the same bit layout as basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartySet(u8);

impl PartySet {
    pub fn new(parties: &[Party]) -> Self {
        PartySet(parties.iter().fold(0, |m, p| m | p.bit()))
    }

    pub fn single(p: Party) -> Self {
        PartySet(p.bit())
    }

    pub const fn from_mask_const(mask: u8) -> Self {
        PartySet(mask & 0b111)
    }

    pub fn from_mask(mask: u8) -> Self {
        PartySet(mask & 0b111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: Party) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn complement(self) -> PartySet {
        PartySet(!self.0 & 0b111)
    }

    pub fn parties(self) -> impl Iterator<Item = Party> {
        Party::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    pub fn label(self) -> String {
        self.parties().map(Party::label).collect()
    }

    /// The six subsets a reduction may keep: A, B, C, AB, AC, BC.
    pub fn reductions() -> [PartySet; 6] {
        [0b100, 0b010, 0b001, 0b110, 0b101, 0b011].map(PartySet)
    }

    /// Splits a basis index into (kept index, traced-out index), each read
    /// most-significant-party first.
    pub fn split_index(self, k: usize) -> (usize, usize) {
        let mut kept = 0;
        let mut env = 0;
        for p in Party::ALL {
            let b = usize::from(k as u8 & p.bit() != 0);
            if self.contains(p) {
                kept = 2 * kept + b;
            } else {
                env = 2 * env + b;
            }
        }
        (kept, env)
    }
}

impl fmt::Display for PartySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Occupied basis kets: bit `k` set iff amplitude `k` is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportPattern(u8);

impl SupportPattern {
    pub const FULL: SupportPattern = SupportPattern(0xff);

    pub fn from_bits(bits: u8) -> Self {
        SupportPattern(bits)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        SupportPattern(indices.iter().fold(0u8, |m, &k| {
            assert!(k < 8, "basis index {k} out of range");
            m | (1 << k)
        }))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, k: usize) -> bool {
        k < 8 && self.0 & (1 << k) != 0
    }

    /// Occupied indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |&k| self.0 & (1 << k) != 0)
    }

    /// Image of the support under the index permutation `k ↦ k ⊕ mask`.
    pub fn flipped(self, mask: FlipMask) -> SupportPattern {
        SupportPattern::from_indices(
            &self
                .indices()
                .map(|k| k ^ mask.bits() as usize)
                .collect::<Vec<_>>(),
        )
    }

    /// All supports reachable by local flips.
    pub fn orbit(self) -> Vec<SupportPattern> {
        let mut out: Vec<_> = FlipMask::all().map(|m| self.flipped(m)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Masks fixing this support.
    pub fn stabilizer(self) -> Vec<FlipMask> {
        FlipMask::all().filter(|&m| self.flipped(m) == self).collect()
    }
}

impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

/// Choice of diagonal (bit clear) or antidiagonal (bit set) operator per party.
///
/// Bit layout matches basis indices: `0b100` flips party A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FlipMask(u8);

impl FlipMask {
    pub const IDENTITY: FlipMask = FlipMask(0);

    pub fn new(bits: u8) -> Option<Self> {
        (bits < 8).then_some(FlipMask(bits))
    }

    pub fn all() -> impl Iterator<Item = FlipMask> {
        (0..8).map(FlipMask)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn flips(self, p: Party) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn compose(self, other: FlipMask) -> FlipMask {
        FlipMask(self.0 ^ other.0)
    }

    /// Three-character "ABC" rendering, e.g. `"011"` for B and C antidiagonal.
    pub fn ket(self) -> String {
        format!("{:03b}", self.0)
    }

    pub fn from_ket(s: &str) -> Option<Self> {
        if s.len() != 3 || !s.chars().all(|c| c == '0' || c == '1') {
            return None;
        }
        u8::from_str_radix(s, 2).ok().map(FlipMask)
    }

    /// Number (1–8) of this diagonal/antidiagonal combination in the usual
    /// listing: all diagonal first, then single flips on C, B, A, then the
    /// pairs AB, AC, BC, then all three.
    pub fn family_number(self) -> u8 {
        match self.0 {
            0b000 => 1,
            0b001 => 2,
            0b010 => 3,
            0b100 => 4,
            0b110 => 5,
            0b101 => 6,
            0b011 => 7,
            _ => 8,
        }
    }

    pub fn from_family_number(n: u8) -> Option<Self> {
        FlipMask::all().find(|m| m.family_number() == n)
    }
}

impl fmt::Display for FlipMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ket())
    }
}

/// Eight complex amplitudes plus an optional label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeQubitPureState {
    amps: [Complex64; 8],
    label: Option<String>,
}

/// Builds a state from `[re, im]` pairs, stored verbatim.
pub fn parse_state(pairs: &[[f64; 2]]) -> Result<ThreeQubitPureState, StateError> {
    if pairs.len() != 8 {
        return Err(StateError::BadArity(pairs.len()));
    }
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (k, p) in pairs.iter().enumerate() {
        amps[k] = Complex64::new(p[0], p[1]);
    }
    ThreeQubitPureState::new(amps)
}

impl ThreeQubitPureState {
    pub fn new(amps: [Complex64; 8]) -> Result<Self, StateError> {
        if let Some(k) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(StateError::NonFinite(k));
        }
        if amps.iter().all(|a| a.norm() < ZERO_MODULUS) {
            return Err(StateError::AllZero);
        }
        Ok(ThreeQubitPureState { amps, label: None })
    }

    pub fn from_real(amps: [f64; 8]) -> Result<Self, StateError> {
        Self::new(amps.map(|a| Complex64::new(a, 0.0)))
    }

    /// The product ket `|k⟩`.
    pub fn basis(k: usize) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[k] = Complex64::new(1.0, 0.0);
        ThreeQubitPureState { amps, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amps
    }

    pub fn amp(&self, k: usize) -> Complex64 {
        self.amps[k]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_modulus(&self) -> f64 {
        self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn normalize(&self) -> Self {
        let n = self.norm();
        ThreeQubitPureState {
            amps: self.amps.map(|a| a / n),
            label: self.label.clone(),
        }
    }

    pub fn support(&self, eps_supp: f64) -> SupportPattern {
        let cutoff = eps_supp * self.max_modulus();
        let bits = (0..8).fold(0u8, |m, k| {
            if self.amps[k].norm() > cutoff {
                m | (1 << k)
            } else {
                m
            }
        });
        SupportPattern(bits)
    }

    /// Applies X-type flips: amplitude `k` moves to index `k ⊕ mask`.
    pub fn apply_flip(&self, mask: FlipMask) -> Self {
        let m = mask.bits() as usize;
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        for (k, a) in self.amps.iter().enumerate() {
            amps[k ^ m] = *a;
        }
        ThreeQubitPureState {
            amps,
            label: self.label.clone(),
        }
    }

    /// Applies `ops[0] ⊗ ops[1] ⊗ ops[2]` for arbitrary 2×2 local matrices.
    ///
    /// Returns `None` when the image vanishes.
    pub fn apply_local(&self, ops: &[Mat2; 3]) -> Option<Self> {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        for (out, slot) in amps.iter_mut().enumerate() {
            let (x, y, z) = (out >> 2 & 1, out >> 1 & 1, out & 1);
            for (inp, a) in self.amps.iter().enumerate() {
                let (i, j, l) = (inp >> 2 & 1, inp >> 1 & 1, inp & 1);
                *slot += ops[0][x][i] * ops[1][y][j] * ops[2][z][l] * a;
            }
        }
        ThreeQubitPureState::new(amps).ok().map(|mut s| {
            s.label = self.label.clone();
            s
        })
    }

    /// Reduced density matrix on the kept parties. The state is normalized first.
    pub fn partial_trace(&self, keep: PartySet) -> Result<DensityMatrix, StateError> {
        if keep.is_empty() || keep.len() > 2 {
            return Err(StateError::BadSubset(keep.label()));
        }
        let psi = self.normalize();
        let dim = 1 << keep.len();
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..8 {
            let (ki, ke) = keep.split_index(k);
            for l in 0..8 {
                let (li, le) = keep.split_index(l);
                if ke == le {
                    rho[ki * dim + li] += psi.amps[k] * psi.amps[l].conj();
                }
            }
        }
        Ok(DensityMatrix { dim, entries: rho })
    }

    /// Ranks (1 or 2) of the three single-qubit reductions.
    pub fn local_ranks(&self, eps_rank: f64) -> [u8; 3] {
        Party::ALL.map(|p| {
            let rho = self
                .partial_trace(PartySet::single(p))
                .expect("single party is a valid subset");
            rho.rank(eps_rank) as u8
        })
    }

    /// Equality up to one global nonzero complex factor.
    pub fn same_ray(&self, other: &Self, tol: f64) -> bool {
        let overlap: Complex64 = self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let n1 = self.norm().powi(2);
        let n2 = other.norm().powi(2);
        overlap.norm_sqr() >= (1.0 - tol) * n1 * n2
    }
}

impl fmt::Display for ThreeQubitPureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{:03b}⟩", a.re, a.im, k)?;
        }
        Ok(())
    }
}

/// Hermitian, unit-trace matrix of dimension 2 or 4, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Builds from row-major entries; `dim` must be 2 or 4.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        assert!(dim == 2 || dim == 4, "density matrices here are 2x2 or 4x4");
        assert_eq!(entries.len(), dim * dim);
        DensityMatrix { dim, entries }
    }

    /// `Σ w_j |v_j⟩⟨v_j|` for normalized or unnormalized vectors `v_j`.
    pub fn from_ensemble(dim: usize, components: &[(f64, &[Complex64])]) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (w, v) in components {
            for i in 0..dim {
                for j in 0..dim {
                    entries[i * dim + j] += *w * v[i] * v[j].conj();
                }
            }
        }
        DensityMatrix::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    m = m.max(self.get(i, j).norm());
                }
            }
        }
        m
    }

    /// Eigenvalues in descending order. Closed form for 2×2.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.dim == 2 {
            let a = self.get(0, 0).re;
            let d = self.get(1, 1).re;
            let b = self.get(0, 1).norm();
            let mean = 0.5 * (a + d);
            let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
            return vec![mean + r, mean - r];
        }
        let m = Matrix4::from_fn(|i, j| self.get(i, j));
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        ev
    }

    pub fn rank(&self, eps: f64) -> usize {
        self.eigenvalues().iter().filter(|&&l| l > eps).count()
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ghz() -> ThreeQubitPureState {
        ThreeQubitPureState::from_real([1., 0., 0., 0., 0., 0., 0., 1.]).unwrap().normalize()
    }

    fn w() -> ThreeQubitPureState {
        ThreeQubitPureState::from_real([0., 1., 1., 0., 1., 0., 0., 0.]).unwrap().normalize()
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_state(&[[1.0, 0.0]; 7]), Err(StateError::BadArity(7)));
        assert_eq!(parse_state(&[[0.0, 0.0]; 8]), Err(StateError::AllZero));
        let mut pairs = [[0.0, 0.0]; 8];
        pairs[3] = [f64::NAN, 0.0];
        assert_eq!(parse_state(&pairs), Err(StateError::NonFinite(3)));
    }

    #[test]
    fn parse_keeps_amplitudes_verbatim() {
        let mut pairs = [[0.0, 0.0]; 8];
        pairs[0] = [1.0, 0.0];
        pairs[7] = [1.0, 0.0];
        let s = parse_state(&pairs).unwrap();
        assert_eq!(s.amp(0), c(1.0));
        assert_eq!(s.amp(7), c(1.0));
        assert!((s.norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn normalize_examples() {
        let s = ThreeQubitPureState::from_real([2., 0., 0., 0., 0., 0., 0., 0.]).unwrap();
        assert_eq!(s.normalize().amp(0), c(1.0));
        let g = ghz();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.amp(0).re - h).abs() < 1e-15 && (g.amp(7).re - h).abs() < 1e-15);
        let gg = g.normalize();
        assert!((0..8).all(|k| (gg.amp(k) - g.amp(k)).norm() < 1e-15));
    }

    #[test]
    fn support_examples() {
        assert_eq!(ThreeQubitPureState::basis(0).support(EPS_SUPP).bits(), 0b0000_0001);
        assert_eq!(ghz().support(EPS_SUPP), SupportPattern::from_indices(&[0, 7]));
        assert_eq!(w().support(EPS_SUPP), SupportPattern::from_indices(&[1, 2, 4]));
        // dust below the relative threshold is not support
        let s = ThreeQubitPureState::from_real([1., 1e-12, 0., 0., 0., 0., 0., 0.]).unwrap();
        assert_eq!(s.support(EPS_SUPP).len(), 1);
    }

    #[test]
    fn flip_examples() {
        let s = ThreeQubitPureState::basis(0).apply_flip(FlipMask::new(0b100).unwrap());
        assert_eq!(s, ThreeQubitPureState::basis(4));
        let fw = w().apply_flip(FlipMask::new(0b001).unwrap());
        assert_eq!(fw.support(EPS_SUPP), SupportPattern::from_indices(&[0, 3, 5]));
        assert_eq!(w().apply_flip(FlipMask::IDENTITY), w());
    }

    #[test]
    fn partial_trace_examples() {
        let rho = ghz().partial_trace(PartySet::single(Party::A)).unwrap();
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 0.5).abs() < 1e-15);
        assert!(rho.get(0, 1).norm() < 1e-15);

        let rho = ThreeQubitPureState::basis(0).partial_trace(PartySet::single(Party::A)).unwrap();
        assert_eq!(rho.get(0, 0), c(1.0));
        assert_eq!(rho.get(1, 1), c(0.0));

        let rho = w().partial_trace(PartySet::single(Party::A)).unwrap();
        assert!((rho.get(0, 0).re - 2.0 / 3.0).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 1.0 / 3.0).abs() < 1e-15);
        assert!(rho.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_subsets() {
        assert!(matches!(
            ghz().partial_trace(PartySet::from_mask(0)),
            Err(StateError::BadSubset(_))
        ));
        assert!(matches!(
            ghz().partial_trace(PartySet::from_mask(0b111)),
            Err(StateError::BadSubset(_))
        ));
    }

    #[test]
    fn bipartite_trace_of_product_is_pure() {
        // |0⟩ ⊗ (|00⟩+|11⟩)/√2: the BC reduction is a pure Bell state
        let s = ThreeQubitPureState::from_real([1., 0., 0., 1., 0., 0., 0., 0.]).unwrap();
        let rho = s.partial_trace(PartySet::new(&[Party::B, Party::C])).unwrap();
        assert_eq!(rho.rank(1e-9), 1);
        assert!((rho.get(0, 3).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn local_rank_examples() {
        assert_eq!(ThreeQubitPureState::basis(0).local_ranks(EPS_RANK), [1, 1, 1]);
        assert_eq!(ghz().local_ranks(EPS_RANK), [2, 2, 2]);
        let s = ThreeQubitPureState::from_real([1., 0., 0., 1., 0., 0., 0., 0.]).unwrap();
        assert_eq!(s.local_ranks(EPS_RANK), [1, 2, 2]);
    }

    #[test]
    fn family_numbers_are_a_bijection() {
        let mut seen: Vec<u8> = FlipMask::all().map(FlipMask::family_number).collect();
        seen.sort();
        assert_eq!(seen, (1..=8).collect::<Vec<_>>());
        assert_eq!(FlipMask::new(0b111).unwrap().family_number(), 8);
        assert_eq!(FlipMask::from_ket("011"), FlipMask::new(3));
        assert_eq!(FlipMask::from_ket("21"), None);
    }

    #[test]
    fn split_index_orders_parties() {
        let ac = PartySet::new(&[Party::A, Party::C]);
        // |xyz⟩ = |1 0 1⟩ keeps (x,z) = 11, traces y = 0
        assert_eq!(ac.split_index(0b101), (0b11, 0));
        assert_eq!(ac.split_index(0b010), (0b00, 1));
    }

    #[test]
    fn same_ray_is_scale_blind() {
        let g = ghz();
        let mut amps = *g.amplitudes();
        for a in amps.iter_mut() {
            *a *= Complex64::new(0.0, -3.0);
        }
        let scaled = ThreeQubitPureState::new(amps).unwrap();
        assert!(g.same_ray(&scaled, 1e-12));
        assert!(!g.same_ray(&w(), 1e-12));
    }
}
