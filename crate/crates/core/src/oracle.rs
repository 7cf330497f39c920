//! Seeded sampling and the randomized consistency campaigns.
//!
//! Every trial draws from its own ChaCha8 stream: the generator is seeded with
//! `seed_from_u64(seed)` and switched to stream `trial`. Trials are therefore
//! independent of evaluation order and of the number of worker threads.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::sio::{solve_slicc_equivalence, verify_witness, SioLocalOperator, SioTriple, Verdict};
use crate::state::{FlipMask, Mat2, Party, SupportPattern, ThreeQubitPureState};
use crate::table::Registry;

/// Smallest modulus a sampled amplitude may have inside its support.
pub const AMPLITUDE_FLOOR: f64 = 1e-3;
/// Range of operator entry moduli.
pub const ENTRY_MODULUS: (f64, f64) = (0.25, 4.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeLaw {
    /// Real and imaginary parts standard normal.
    #[default]
    UnitGaussian,
    /// Modulus uniform on (0, 1), phase uniform.
    UniformModulus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub n_trials: usize,
    pub amplitude_law: AmplitudeLaw,
    /// Restrict sampled source states to this support.
    pub support_filter: Option<SupportPattern>,
    /// Compare against the deliberately corrupted registry.
    pub mutate_table: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            seed: 1,
            n_trials: 10_000,
            amplitude_law: AmplitudeLaw::UnitGaussian,
            support_filter: None,
            mutate_table: false,
        }
    }
}

impl RandomSpec {
    pub fn new(seed: u64, n_trials: usize) -> Self {
        RandomSpec {
            seed,
            n_trials,
            ..Default::default()
        }
    }

    /// Generator for one trial.
    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

fn unit_phase<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))
}

fn sample_amplitude<R: Rng>(rng: &mut R, law: AmplitudeLaw) -> Complex64 {
    match law {
        AmplitudeLaw::UnitGaussian => {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        }
        AmplitudeLaw::UniformModulus => rng.gen::<f64>() * unit_phase(rng),
    }
}

/// Normalized state with zeros outside `support` (full support if `None`) and
/// every in-support modulus at least [`AMPLITUDE_FLOOR`].
pub fn sample_state<R: Rng>(
    rng: &mut R,
    law: AmplitudeLaw,
    support: Option<SupportPattern>,
) -> ThreeQubitPureState {
    let support = support.unwrap_or(SupportPattern::FULL);
    assert!(!support.is_empty(), "cannot sample on an empty support");
    loop {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        for k in support.indices() {
            amps[k] = sample_amplitude(rng, law);
        }
        let Ok(s) = ThreeQubitPureState::new(amps) else {
            continue;
        };
        let s = s.normalize();
        if support.indices().all(|k| s.amp(k).norm() >= AMPLITUDE_FLOOR) {
            return s;
        }
    }
}

/// Uniformly random nonempty support.
pub fn sample_support<R: Rng>(rng: &mut R) -> SupportPattern {
    SupportPattern::from_bits(rng.gen_range(1..=255u8))
}

fn sample_entry<R: Rng>(rng: &mut R) -> Complex64 {
    let (lo, hi) = ENTRY_MODULUS;
    let modulus = (rng.gen_range(lo.ln()..hi.ln())).exp();
    modulus * unit_phase(rng)
}

/// Invertible triple with entry moduli log-uniform in [`ENTRY_MODULUS`] and
/// uniform phases; the family is uniform when not given.
pub fn sample_triple<R: Rng>(rng: &mut R, family: Option<FlipMask>) -> SioTriple {
    let family = family.unwrap_or_else(|| FlipMask::new(rng.gen_range(0..8)).expect("three bits"));
    let ops = Party::ALL.map(|p| {
        let (u, v) = (sample_entry(rng), sample_entry(rng));
        let op = if family.flips(p) {
            SioLocalOperator::antidiagonal(u, v)
        } else {
            SioLocalOperator::diagonal(u, v)
        };
        op.expect("entries are bounded away from zero")
    });
    SioTriple::new(ops[0], ops[1], ops[2])
}

/// First state of the campaign stream `0`, for reproducible single draws.
pub fn random_state(spec: &RandomSpec, support: Option<SupportPattern>) -> ThreeQubitPureState {
    sample_state(&mut spec.rng(0), spec.amplitude_law, support)
}

pub fn random_sio_triple(spec: &RandomSpec, family: Option<FlipMask>) -> SioTriple {
    sample_triple(&mut spec.rng(0), family)
}

fn pairs(s: &ThreeQubitPureState) -> Vec<[f64; 2]> {
    s.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub trial: usize,
    pub kind: String,
    pub psi: Vec<[f64; 2]>,
    pub phi: Vec<[f64; 2]>,
    /// Solver verdict (equivalent or not); for the rank suite, whether ranks held.
    pub solver: bool,
    pub table: bool,
    pub row: String,
    pub family: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Wall-clock time; not serialized so reports stay byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ConsistencyReport {
    fn assemble(suite: &str, spec: &RandomSpec, results: Vec<Option<Disagreement>>, start: Instant) -> Self {
        let trials = results.len();
        let disagreements: Vec<Disagreement> = results.into_iter().flatten().collect();
        ConsistencyReport {
            suite: suite.to_string(),
            seed: spec.seed,
            trials,
            agreements: trials - disagreements.len(),
            disagreements,
            elapsed: start.elapsed(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn family_of(v: &Verdict) -> Option<String> {
    v.witness().map(|w| w.family().ket())
}

/// Checks one ordered pair; `None` when solver and table agree and any
/// witness verifies. `expect_equivalent` marks pairs known to share an orbit.
fn check_pair(
    registry: &Registry,
    psi: &ThreeQubitPureState,
    phi: &ThreeQubitPureState,
    expect_equivalent: bool,
    kind: &str,
    trial: usize,
) -> Option<Disagreement> {
    let verdict = solve_slicc_equivalence(psi, phi);
    let table = registry.compare(psi, phi, crate::state::EPS_SUPP);
    let solver = verdict.is_equivalent();
    let mut problems = Vec::new();
    if let Some(w) = verdict.witness() {
        if !verify_witness(w, psi, phi) {
            problems.push("witness fails verification".to_string());
        }
    }
    if expect_equivalent && !solver {
        problems.push("solver found no witness on an orbit pair".to_string());
    }
    if solver != table.equivalent {
        problems.push(format!("solver says {solver}, table says {}", table.equivalent));
    }
    if problems.is_empty() {
        return None;
    }
    Some(Disagreement {
        trial,
        kind: kind.to_string(),
        psi: pairs(psi),
        phi: pairs(phi),
        solver,
        table: table.equivalent,
        row: table.psi_row.to_string(),
        family: family_of(&verdict),
        detail: problems.join("; "),
    })
}

/// Per trial: an orbit pair `(s, T s)` that must be equivalent, then an
/// independent pair on the same support orbit compared in both directions.
pub fn orbit_consistency_campaign(spec: &RandomSpec) -> ConsistencyReport {
    let start = Instant::now();
    let registry = if spec.mutate_table {
        Registry::mutated()
    } else {
        Registry::published()
    };
    let results: Vec<Option<Disagreement>> = (0..spec.n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = spec.rng(trial as u64);
            let support = spec.support_filter.unwrap_or_else(|| sample_support(&mut rng));
            let s = sample_state(&mut rng, spec.amplitude_law, Some(support));
            let t = sample_triple(&mut rng, None);
            let image = t.apply(&s).normalize();
            if let Some(d) = check_pair(registry, &s, &image, true, "orbit", trial) {
                return Some(d);
            }
            let mask = FlipMask::new(rng.gen_range(0..8)).expect("three bits");
            let other = sample_state(&mut rng, spec.amplitude_law, Some(support.flipped(mask)));
            check_pair(registry, &s, &other, false, "independent", trial)
                .or_else(|| check_pair(registry, &other, &s, false, "independent-reversed", trial))
        })
        .collect();
    ConsistencyReport::assemble("orbit", spec, results, start)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IncoherentKind {
    Diagonal,
    Antidiagonal,
    SingularDiagonal,
    /// Both basis kets sent to the same ket; incoherent but not strictly so.
    ManyToOne,
}

fn sample_incoherent<R: Rng>(rng: &mut R) -> (IncoherentKind, Mat2) {
    let zero = Complex64::new(0.0, 0.0);
    let (u, v) = (sample_entry(rng), sample_entry(rng));
    let kinds = [
        IncoherentKind::Diagonal,
        IncoherentKind::Antidiagonal,
        IncoherentKind::SingularDiagonal,
        IncoherentKind::ManyToOne,
    ];
    let kind = kinds[Uniform::new(0, kinds.len()).sample(rng)];
    let which = rng.gen_bool(0.5);
    let m = match kind {
        IncoherentKind::Diagonal => [[u, zero], [zero, v]],
        IncoherentKind::Antidiagonal => [[zero, u], [v, zero]],
        IncoherentKind::SingularDiagonal if which => [[u, zero], [zero, zero]],
        IncoherentKind::SingularDiagonal => [[zero, zero], [zero, v]],
        IncoherentKind::ManyToOne if which => [[u, v], [zero, zero]],
        IncoherentKind::ManyToOne => [[zero, zero], [u, v]],
    };
    (kind, m)
}

/// Per trial: random state and random local incoherent operators (possibly
/// singular); a nonzero image must not raise any local rank.
pub fn rank_monotonicity_campaign(spec: &RandomSpec) -> ConsistencyReport {
    let start = Instant::now();
    let eps = crate::state::EPS_RANK;
    let results: Vec<Option<Disagreement>> = (0..spec.n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = spec.rng(trial as u64);
            let support = spec.support_filter.unwrap_or_else(|| sample_support(&mut rng));
            let s = sample_state(&mut rng, spec.amplitude_law, Some(support));
            let drawn = [0, 1, 2].map(|_| sample_incoherent(&mut rng));
            let image = s.apply_local(&drawn.map(|(_, m)| m))?;
            let before = s.local_ranks(eps);
            let after = image.normalize().local_ranks(eps);
            let ok = (0..3).all(|i| after[i] <= before[i]);
            (!ok).then(|| Disagreement {
                trial,
                kind: "rank".to_string(),
                psi: pairs(&s),
                phi: pairs(&image),
                solver: false,
                table: true,
                row: String::new(),
                family: None,
                detail: format!(
                    "ranks {before:?} -> {after:?} under {:?}",
                    drawn.map(|(k, _)| k)
                ),
            })
        })
        .collect();
    ConsistencyReport::assemble("ranks", spec, results, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_respects_support_and_floor() {
        let spec = RandomSpec::new(42, 1);
        let ghz = SupportPattern::from_indices(&[0, 7]);
        let s = random_state(&spec, Some(ghz));
        assert_eq!(s.support(1e-9), ghz);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert_eq!(s, random_state(&spec, Some(ghz)));
        let single = random_state(&spec, Some(SupportPattern::from_indices(&[0])));
        assert!((single.amp(0).norm() - 1.0).abs() < 1e-12);
        let mut rng = spec.rng(3);
        for _ in 0..1000 {
            let s = sample_state(&mut rng, AmplitudeLaw::UniformModulus, None);
            assert_eq!(s.support(1e-9), SupportPattern::FULL);
        }
    }

    #[test]
    fn triples_have_requested_family() {
        let spec = RandomSpec::new(7, 1);
        for m in FlipMask::all() {
            let t = random_sio_triple(&spec, Some(m));
            assert_eq!(t.family(), m);
            for op in t.ops() {
                let (u, v) = op.entries();
                for z in [u, v] {
                    assert!(z.norm() >= 0.25 - 1e-12 && z.norm() <= 4.0 + 1e-12);
                }
            }
        }
        assert_eq!(random_sio_triple(&spec, None), random_sio_triple(&spec, None));
    }

    #[test]
    fn small_campaigns_are_clean_and_deterministic() {
        let spec = RandomSpec::new(5, 300);
        let a = orbit_consistency_campaign(&spec);
        assert!(a.is_clean(), "{:?}", a.disagreements.first());
        let b = orbit_consistency_campaign(&spec);
        assert_eq!(a.agreements, b.agreements);
        let r = rank_monotonicity_campaign(&spec);
        assert!(r.is_clean(), "{:?}", r.disagreements.first());
    }

    #[test]
    fn mutation_is_detected() {
        let spec = RandomSpec {
            mutate_table: true,
            support_filter: Some(SupportPattern::from_indices(&[0, 1, 2, 3])),
            ..RandomSpec::new(1, 50)
        };
        assert!(!orbit_consistency_campaign(&spec).is_clean());
    }

    #[test]
    fn singular_projector_drops_ranks() {
        let ghz = ThreeQubitPureState::from_real([1., 0., 0., 0., 0., 0., 0., 1.]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let id = [[one, zero], [zero, one]];
        let p = [[one, zero], [zero, zero]];
        let image = ghz.apply_local(&[p, id, id]).unwrap().normalize();
        assert_eq!(ghz.local_ranks(1e-9), [2, 2, 2]);
        assert_eq!(image.local_ranks(1e-9), [1, 1, 1]);
    }
}
