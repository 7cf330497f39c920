//! Reduced-state descriptors of every row against the observations attached
//! to the tables, on 100 random coefficient vectors per row.

use slicckit::oracle::{sample_state, AmplitudeLaw, RandomSpec};
use slicckit::{
    fine_descriptor, CoherenceNature, Complex64, FineDescriptor, Registry, RowId, SloccClass,
    ThreeQubitPureState,
};

use CoherenceNature::{MixedCoherent as MC, MixedIncoherent as MI, PureCoherent as PC, PureIncoherent as PI};

const SAMPLES: usize = 100;

fn row(id: &str) -> RowId {
    id.parse().unwrap()
}

/// Random states on the representative support of `id`, after `adjust`.
fn samples(id: &str, seed: u64, adjust: impl Fn(&mut [Complex64; 8])) -> Vec<ThreeQubitPureState> {
    let support = Registry::published().row(row(id)).rep_support();
    let spec = RandomSpec::new(seed, SAMPLES);
    (0..SAMPLES)
        .map(|t| {
            let s = sample_state(&mut spec.rng(t as u64), AmplitudeLaw::UnitGaussian, Some(support));
            let mut a = *s.amplitudes();
            adjust(&mut a);
            ThreeQubitPureState::new(a).unwrap().normalize()
        })
        .collect()
}

fn descriptors(id: &str) -> Vec<FineDescriptor> {
    samples(id, 11, |_| {}).iter().map(fine_descriptor).collect()
}

fn singles(id: &str, expected: [CoherenceNature; 3]) {
    for d in descriptors(id) {
        assert_eq!(d.single_qubit_nature, expected, "row {id}");
    }
}

fn single_mix(d: &FineDescriptor) -> [(usize, usize); 3] {
    [0, 1, 2].map(|i| d.single_qubit_mix[i].counts())
}

fn bipartite_mix(d: &FineDescriptor) -> [(usize, usize); 3] {
    [0, 1, 2].map(|i| d.bipartite_mix[i].counts())
}

fn assert_slocc(d: &FineDescriptor, allowed: &[SloccClass], id: &str) {
    assert!(allowed.contains(&d.slocc), "row {id}: {:?}", d.slocc);
}

#[test]
fn fully_separable_rows() {
    singles("1", [PI, PI, PI]);
    singles("2d", [PC, PI, PI]);
    singles("2b", [PI, PC, PI]);
    singles("2a", [PI, PI, PC]);
    for id in ["1", "2a", "2b", "2d"] {
        for d in descriptors(id) {
            assert_eq!(d.slocc, SloccClass::FullySeparable, "row {id}");
        }
    }
}

/// The representatives of 4k, 4e, 4h are products exactly when ad = bc.
#[test]
fn four_term_rows_with_unit_cross_ratio_are_products() {
    for (id, expected) in [("4k", [PI, PC, PC]), ("4e", [PC, PI, PC]), ("4h", [PC, PC, PI])] {
        let support: Vec<usize> = Registry::published().row(row(id)).rep_support().indices().collect();
        let product = samples(id, 12, |a| {
            let (i, j, k, l) = (support[0], support[1], support[2], support[3]);
            a[l] = a[j] * a[k] / a[i];
        });
        for s in &product {
            let d = fine_descriptor(s);
            assert_eq!(d.single_qubit_nature, expected, "row {id} with ad=bc");
            assert_eq!(d.slocc, SloccClass::FullySeparable);
        }
    }
}

#[test]
fn eight_terms_product_is_all_pure_coherent() {
    // a full product of three coherent qubits: every listed ratio equals one
    let spec = RandomSpec::new(13, SAMPLES);
    for t in 0..SAMPLES {
        let mut rng = spec.rng(t as u64);
        let q: Vec<ThreeQubitPureState> = (0..3)
            .map(|_| sample_state(&mut rng, AmplitudeLaw::UnitGaussian, None))
            .collect();
        let amps = std::array::from_fn(|k| q[0].amp(k >> 2 & 1) * q[1].amp(k >> 1 & 1) * q[2].amp(k & 1));
        let s = ThreeQubitPureState::new(amps).unwrap().normalize();
        let a = |k: usize| s.amp(k);
        let listed = [(0, 3, 1, 2), (0, 5, 1, 4), (0, 7, 1, 6), (0, 6, 2, 4), (0, 7, 2, 5), (1, 7, 3, 5), (1, 6, 3, 4), (0, 7, 3, 4)];
        for (n1, n2, d1, d2) in listed {
            assert!((a(n1) * a(n2) / (a(d1) * a(d2)) - 1.0).norm() < 1e-9);
        }
        let d = fine_descriptor(&s);
        assert_eq!(d.single_qubit_nature, [PC, PC, PC]);
        assert_eq!(d.slocc, SloccClass::FullySeparable);
    }
}

/// Party (0 = A) whose value in `values` differs from the other two.
fn odd_one_out<T: PartialEq + Copy>(values: [T; 3]) -> Option<usize> {
    (0..3).find(|&i| values[(i + 1) % 3] == values[(i + 2) % 3] && values[i] != values[(i + 1) % 3])
}

#[test]
fn biseparable_rows() {
    singles("2c", [PI, MI, MI]);
    singles("2e", [MI, PI, MI]);
    singles("2f", [MI, MI, PI]);
    singles("3a", [PI, MC, MC]);
    singles("3b", [MC, PI, MC]);
    singles("3f", [MC, MC, PI]);
    singles("4k", [PI, MC, MC]);
    singles("4e", [MC, PI, MC]);
    singles("4h", [MC, MC, PI]);
    for id in ["2c", "2e", "2f", "3a", "3b", "3f", "4k", "4e", "4h"] {
        for d in descriptors(id) {
            let pure = odd_one_out(d.single_qubit_nature).expect("one distinguished party");
            let expected = [SloccClass::BisepABC, SloccClass::BisepBAC, SloccClass::BisepCAB][pure];
            assert_eq!(d.slocc, expected, "row {id}");
        }
    }
}

/// A full-support state with one party factored out: that party is pure
/// coherent, the other two mixed coherent, and the listed ratios equal one.
#[test]
fn eight_terms_with_one_factor() {
    let ratios: [&[(usize, usize, usize, usize)]; 3] = [
        &[(0, 5, 1, 4), (0, 6, 2, 4), (0, 7, 3, 4)],
        &[(0, 3, 1, 2), (0, 6, 2, 4), (0, 7, 2, 5)],
        &[(0, 3, 1, 2), (0, 5, 1, 4), (0, 7, 1, 6)],
    ];
    let spec = RandomSpec::new(14, SAMPLES);
    for party in 0..3 {
        for t in 0..SAMPLES {
            let mut rng = spec.rng(t as u64);
            let q = sample_state(&mut rng, AmplitudeLaw::UnitGaussian, None);
            let pair = sample_state(&mut rng, AmplitudeLaw::UnitGaussian, None);
            let amps = std::array::from_fn(|k| {
                let bit = |p: usize| k >> (2 - p) & 1;
                let rest: Vec<usize> = (0..3).filter(|&p| p != party).collect();
                q.amp(bit(party)) * pair.amp(2 * bit(rest[0]) + bit(rest[1]))
            });
            let s = ThreeQubitPureState::new(amps).unwrap().normalize();
            let a = |k: usize| s.amp(k);
            for &(n1, n2, d1, d2) in ratios[party] {
                assert!((a(n1) * a(n2) / (a(d1) * a(d2)) - 1.0).norm() < 1e-9);
            }
            let mut expected = [MC; 3];
            expected[party] = PC;
            assert_eq!(fine_descriptor(&s).single_qubit_nature, expected);
        }
    }
}

#[test]
fn genuine_rows_with_incoherent_singles() {
    for (id, bip) in [("2g", (0, 2)), ("3e", (1, 1)), ("4j", (2, 0))] {
        for d in descriptors(id) {
            assert_eq!(d.single_qubit_nature, [MI, MI, MI], "row {id}");
            assert_eq!(bipartite_mix(&d), [bip; 3], "row {id}");
            assert_slocc(&d, &[SloccClass::Ghz, SloccClass::W], id);
        }
    }
}

#[test]
fn genuine_rows_with_one_coherent_single() {
    let rows = [("3d", 0, (1, 1)), ("4n", 0, (2, 0)), ("3g", 1, (1, 1)), ("4m", 1, (2, 0)), ("3c", 2, (1, 1)), ("4l", 2, (2, 0))];
    for (id, party, bip) in rows {
        let mut expected = [MI; 3];
        expected[party] = MC;
        for d in descriptors(id) {
            assert_eq!(d.single_qubit_nature, expected, "row {id}");
            assert_eq!(bipartite_mix(&d), [bip; 3], "row {id}");
            assert_slocc(&d, &[SloccClass::Ghz, SloccClass::W], id);
        }
    }
    for (id, party) in [("4d", 0), ("4g", 1), ("4i", 2)] {
        let mut expected = [MC; 3];
        expected[party] = MI;
        singles(id, expected);
    }
}

#[test]
fn rows_with_all_singles_mixed_coherent() {
    let one_two = (1, 2);
    let one_one = (1, 1);
    let two_one = (2, 1);
    let two_two = (2, 2);
    let with_odd = |odd: usize, x: (usize, usize), rest: (usize, usize)| {
        let mut m = [rest; 3];
        m[odd] = x;
        m
    };
    let mut expected: Vec<(&str, [(usize, usize); 3])> = vec![
        ("4a", [one_one; 3]),
        ("4f", with_odd(0, one_two, one_one)),
        ("4c", with_odd(1, one_two, one_one)),
        ("4b", with_odd(2, one_two, one_one)),
        ("5d", [one_two; 3]),
        ("6f", [two_two; 3]),
        ("7", [(3, 1); 3]),
        ("8", [(4, 0); 3]),
    ];
    for id in ["5e", "5f", "5g"] {
        let d = &descriptors(id)[0];
        let odd = odd_one_out(single_mix(d)).expect("one distinguished party");
        expected.push((id, with_odd(odd, two_one, one_two)));
    }
    for id in ["6c", "6e", "6g"] {
        let d = &descriptors(id)[0];
        let odd = odd_one_out(single_mix(d)).expect("one distinguished party");
        expected.push((id, with_odd(odd, two_one, two_two)));
    }
    for id in ["5a", "5b", "5c"] {
        let d = &descriptors(id)[0];
        let odd = odd_one_out(single_mix(d)).expect("one distinguished party");
        expected.push((id, with_odd(odd, one_one, two_one)));
    }
    for (id, mix) in expected {
        for d in descriptors(id) {
            assert_eq!(d.single_qubit_nature, [MC; 3], "row {id}");
            assert_eq!(single_mix(&d), mix, "row {id}");
        }
    }
    for (id, party) in [("6d", 0), ("6b", 1), ("6a", 2)] {
        for d in descriptors(id) {
            assert_eq!(single_mix(&d)[party], (3, 0), "row {id}");
        }
    }
}

#[test]
fn same_slocc_class_different_rows() {
    let d1 = &descriptors("1")[0];
    let d2a = &descriptors("2a")[0];
    assert_eq!(d1.slocc, d2a.slocc);
    assert_ne!(d1.single_qubit_nature, d2a.single_qubit_nature);
    assert!(descriptors("2g").iter().chain(&descriptors("4c")).all(|d| d.slocc == SloccClass::Ghz));
}
