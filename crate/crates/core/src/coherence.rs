//! Coherence nature and mixture composition of reduced states, the
//! three-tangle, and the SLOCC class.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::StateError;
use crate::state::{DensityMatrix, Party, PartySet, Thresholds, ThreeQubitPureState};

/// Tangle above which a state with full local ranks is called GHZ-type.
pub const TANGLE_GHZ: f64 = 1e-8;
/// Band of tangle values where the GHZ/W call depends on the threshold.
pub const TANGLE_GRAY: (f64, f64) = (1e-10, 1e-6);
/// Squared-overlap slack for merging proportional components.
pub const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoherenceNature {
    PureIncoherent,
    PureCoherent,
    MixedIncoherent,
    MixedCoherent,
}

impl CoherenceNature {
    pub fn is_pure(self) -> bool {
        matches!(self, CoherenceNature::PureIncoherent | CoherenceNature::PureCoherent)
    }

    pub fn is_coherent(self) -> bool {
        matches!(self, CoherenceNature::PureCoherent | CoherenceNature::MixedCoherent)
    }
}

/// Pure iff the second-largest eigenvalue is at most `tol`; incoherent iff
/// every off-diagonal entry is at most `tol` in modulus.
pub fn coherence_nature(rho: &DensityMatrix, tol: f64) -> CoherenceNature {
    let pure = rho.eigenvalues()[1] <= tol;
    let incoherent = rho.max_off_diagonal() <= tol;
    match (pure, incoherent) {
        (true, true) => CoherenceNature::PureIncoherent,
        (true, false) => CoherenceNature::PureCoherent,
        (false, true) => CoherenceNature::MixedIncoherent,
        (false, false) => CoherenceNature::MixedCoherent,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureComponent {
    pub weight: f64,
    /// Unit vector on the kept parties.
    pub state: Vec<Complex64>,
    pub coherent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureComposition {
    pub n_coherent: usize,
    pub n_incoherent: usize,
    pub components: Vec<MixtureComponent>,
}

impl MixtureComposition {
    pub fn density_matrix(&self) -> DensityMatrix {
        let dim = self.components.first().map_or(2, |c| c.state.len());
        let parts: Vec<(f64, &[Complex64])> = self
            .components
            .iter()
            .map(|c| (c.weight, c.state.as_slice()))
            .collect();
        DensityMatrix::from_ensemble(dim, &parts)
    }

    /// `(coherent, incoherent)` counts.
    pub fn counts(&self) -> (usize, usize) {
        (self.n_coherent, self.n_incoherent)
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Mixture of the reduced state on `kept` obtained by measuring the other
/// parties in the computational basis. Zero outcomes are dropped and
/// proportional outcomes merged.
pub fn conditional_decomposition(
    state: &ThreeQubitPureState,
    kept: PartySet,
) -> Result<MixtureComposition, StateError> {
    conditional_decomposition_with(state, kept, &Thresholds::default())
}

pub fn conditional_decomposition_with(
    state: &ThreeQubitPureState,
    kept: PartySet,
    thr: &Thresholds,
) -> Result<MixtureComposition, StateError> {
    if kept.is_empty() || kept.len() > 2 {
        return Err(StateError::BadSubset(kept.label()));
    }
    let psi = state.normalize();
    let floor = thr.supp * psi.max_modulus();
    let dim = 1 << kept.len();
    let n_env = 8 / dim;
    let mut branches = vec![vec![Complex64::new(0.0, 0.0); dim]; n_env];
    for k in 0..8 {
        let (ki, ke) = kept.split_index(k);
        if psi.amp(k).norm() > floor {
            branches[ke][ki] = psi.amp(k);
        }
    }

    let mut merged: Vec<(f64, Vec<Complex64>)> = Vec::new();
    for v in branches {
        let w = norm_sqr(&v);
        if w == 0.0 {
            continue;
        }
        let unit: Vec<Complex64> = v.iter().map(|z| z / w.sqrt()).collect();
        match merged
            .iter_mut()
            .find(|(_, u)| inner(u, &unit).norm_sqr() >= 1.0 - MERGE_TOL)
        {
            Some((wu, _)) => *wu += w,
            None => merged.push((w, unit)),
        }
    }

    let components: Vec<MixtureComponent> = merged
        .into_iter()
        .map(|(weight, state)| {
            let coherent = state.iter().filter(|z| z.norm() > 0.0).count() >= 2;
            MixtureComponent {
                weight,
                state,
                coherent,
            }
        })
        .collect();
    let n_coherent = components.iter().filter(|c| c.coherent).count();
    Ok(MixtureComposition {
        n_coherent,
        n_incoherent: components.len() - n_coherent,
        components,
    })
}

/// `4|d₁ − 2d₂ + 4d₃|`, the modulus of the Cayley hyperdeterminant scaled so
/// that the normalized GHZ state has tangle 1. Homogeneous of degree 4, so
/// the input should be normalized.
pub fn three_tangle(state: &ThreeQubitPureState) -> f64 {
    let a = |k: usize| state.amp(k);
    let d1 = a(0).powi(2) * a(7).powi(2)
        + a(1).powi(2) * a(6).powi(2)
        + a(2).powi(2) * a(5).powi(2)
        + a(4).powi(2) * a(3).powi(2);
    let d2 = a(0) * a(7) * a(3) * a(4)
        + a(0) * a(7) * a(5) * a(2)
        + a(0) * a(7) * a(6) * a(1)
        + a(3) * a(4) * a(5) * a(2)
        + a(3) * a(4) * a(6) * a(1)
        + a(5) * a(2) * a(6) * a(1);
    let d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}

/// Warning text when `tau` falls in the threshold-sensitive band.
pub fn tangle_warning(tau: f64) -> Option<String> {
    (tau > TANGLE_GRAY.0 && tau < TANGLE_GRAY.1).then(|| {
        format!(
            "three-tangle {tau:e} lies in ({:e}, {:e}); the GHZ/W call depends on the {TANGLE_GHZ:e} threshold",
            TANGLE_GRAY.0, TANGLE_GRAY.1
        )
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SloccClass {
    FullySeparable,
    #[serde(rename = "Bisep_A_BC")]
    BisepABC,
    #[serde(rename = "Bisep_B_AC")]
    BisepBAC,
    #[serde(rename = "Bisep_C_AB")]
    BisepCAB,
    #[serde(rename = "GHZ")]
    Ghz,
    W,
}

impl SloccClass {
    pub fn name(self) -> &'static str {
        match self {
            SloccClass::FullySeparable => "FullySeparable",
            SloccClass::BisepABC => "Bisep_A_BC",
            SloccClass::BisepBAC => "Bisep_B_AC",
            SloccClass::BisepCAB => "Bisep_C_AB",
            SloccClass::Ghz => "GHZ",
            SloccClass::W => "W",
        }
    }
}

pub fn slocc_class(state: &ThreeQubitPureState) -> SloccClass {
    slocc_class_with(state, &Thresholds::default())
}

pub fn slocc_class_with(state: &ThreeQubitPureState, thr: &Thresholds) -> SloccClass {
    let psi = state.normalize();
    let ranks = psi.local_ranks(thr.rank);
    let ones: Vec<usize> = (0..3).filter(|&i| ranks[i] == 1).collect();
    match ones.as_slice() {
        [] => {
            if three_tangle(&psi) > TANGLE_GHZ {
                SloccClass::Ghz
            } else {
                SloccClass::W
            }
        }
        [0] => SloccClass::BisepABC,
        [1] => SloccClass::BisepBAC,
        [2] => SloccClass::BisepCAB,
        // two rank-one parties force the third to be rank one as well
        _ => SloccClass::FullySeparable,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FineDescriptor {
    /// Reductions to A, B, C.
    pub single_qubit_nature: [CoherenceNature; 3],
    pub single_qubit_mix: [MixtureComposition; 3],
    /// Reductions to AB, AC, BC.
    pub bipartite_nature: [CoherenceNature; 3],
    pub bipartite_mix: [MixtureComposition; 3],
    pub slocc: SloccClass,
}

pub const BIPARTITE: [PartySet; 3] = [
    PartySet::from_mask_const(0b110),
    PartySet::from_mask_const(0b101),
    PartySet::from_mask_const(0b011),
];

pub fn fine_descriptor(state: &ThreeQubitPureState) -> FineDescriptor {
    fine_descriptor_with(state, &Thresholds::default())
}

pub fn fine_descriptor_with(state: &ThreeQubitPureState, thr: &Thresholds) -> FineDescriptor {
    let psi = state.normalize();
    let nature = |keep: PartySet| {
        let rho = psi.partial_trace(keep).expect("one or two parties");
        coherence_nature(&rho, thr.rank)
    };
    let mix = |keep: PartySet| {
        conditional_decomposition_with(&psi, keep, thr).expect("one or two parties")
    };
    let singles = Party::ALL.map(PartySet::single);
    FineDescriptor {
        single_qubit_nature: singles.map(nature),
        single_qubit_mix: singles.map(mix),
        bipartite_nature: BIPARTITE.map(nature),
        bipartite_mix: BIPARTITE.map(mix),
        slocc: slocc_class_with(&psi, thr),
    }
}
