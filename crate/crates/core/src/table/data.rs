//! Printed classification data, kept verbatim, plus the corrections needed to
//! make it agree with the kernel computation.

use crate::state::FlipMask;

/// `Δᵢ = num/den` over coefficient letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaDef {
    pub index: u8,
    pub num: &'static str,
    pub den: &'static str,
}

pub const DELTAS: [DeltaDef; 11] = [
    DeltaDef { index: 1, num: "ad", den: "bc" },
    DeltaDef { index: 2, num: "af", den: "be" },
    DeltaDef { index: 3, num: "af", den: "ce" },
    DeltaDef { index: 4, num: "af", den: "de" },
    DeltaDef { index: 5, num: "ae", den: "bd" },
    DeltaDef { index: 6, num: "af", den: "dc" },
    DeltaDef { index: 7, num: "bf", den: "cd" },
    DeltaDef { index: 8, num: "ag", den: "ce" },
    DeltaDef { index: 9, num: "ae", den: "cd" },
    DeltaDef { index: 10, num: "be", den: "cd" },
    DeltaDef { index: 11, num: "aae", den: "bcd" },
];

pub fn delta(index: u8) -> &'static DeltaDef {
    &DELTAS[index as usize - 1]
}

/// `Δᵢ' = Δᵢ` or, when `reciprocal`, `Δᵢ' = 1/Δᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaTerm {
    pub delta: u8,
    pub reciprocal: bool,
}

const fn eq(delta: u8) -> DeltaTerm {
    DeltaTerm { delta, reciprocal: false }
}

const fn inv(delta: u8) -> DeltaTerm {
    DeltaTerm { delta, reciprocal: true }
}

/// The condition column of a row: disjunction of conjunctions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrintedConditions {
    /// No continuum of classes; same support orbit means same class.
    No,
    Deltas(&'static [&'static [DeltaTerm]]),
    /// Conditions listed case by case for the eight operator combinations.
    Appendix,
}

pub struct RowData {
    pub id: &'static str,
    pub support: &'static [usize],
    pub printed: PrintedConditions,
    /// Replacement used for decisions when the printed column is wrong.
    pub corrected: Option<(&'static [&'static [DeltaTerm]], &'static str)>,
}

use PrintedConditions::{Appendix, Deltas, No};

const D1_EITHER: &[&[DeltaTerm]] = &[&[eq(1)], &[inv(1)]];

pub const ROWS: [RowData; 45] = [
    RowData { id: "1", support: &[0], printed: No, corrected: None },
    RowData { id: "2a", support: &[0, 1], printed: No, corrected: None },
    RowData { id: "2b", support: &[0, 2], printed: No, corrected: None },
    RowData { id: "2c", support: &[0, 3], printed: No, corrected: None },
    RowData { id: "2d", support: &[0, 4], printed: No, corrected: None },
    RowData { id: "2e", support: &[0, 5], printed: No, corrected: None },
    RowData { id: "2f", support: &[0, 6], printed: No, corrected: None },
    RowData { id: "2g", support: &[0, 7], printed: No, corrected: None },
    RowData { id: "3a", support: &[0, 1, 2], printed: No, corrected: None },
    RowData { id: "3b", support: &[0, 1, 4], printed: No, corrected: None },
    RowData { id: "3c", support: &[0, 1, 6], printed: No, corrected: None },
    RowData { id: "3d", support: &[0, 3, 4], printed: No, corrected: None },
    RowData { id: "3e", support: &[0, 3, 5], printed: No, corrected: None },
    RowData { id: "3f", support: &[0, 2, 4], printed: No, corrected: None },
    RowData { id: "3g", support: &[0, 2, 5], printed: No, corrected: None },
    RowData { id: "4a", support: &[0, 1, 2, 4], printed: No, corrected: None },
    RowData { id: "4b", support: &[0, 1, 2, 5], printed: No, corrected: None },
    RowData { id: "4c", support: &[0, 1, 2, 6], printed: No, corrected: None },
    RowData { id: "4d", support: &[0, 1, 2, 7], printed: No, corrected: None },
    RowData {
        id: "4e",
        support: &[0, 1, 4, 5],
        printed: No,
        corrected: Some((
            D1_EITHER,
            "party B is constant on this support, so ad/bc is invariant and a flip on A or C inverts it",
        )),
    },
    RowData { id: "4f", support: &[0, 1, 4, 6], printed: No, corrected: None },
    RowData { id: "4g", support: &[0, 1, 4, 7], printed: No, corrected: None },
    RowData {
        id: "4h",
        support: &[0, 2, 4, 6],
        printed: No,
        corrected: Some((
            D1_EITHER,
            "party C is constant on this support, so ad/bc is invariant and a flip on A or B inverts it",
        )),
    },
    RowData { id: "4i", support: &[0, 2, 4, 7], printed: No, corrected: None },
    RowData { id: "4j", support: &[0, 3, 5, 6], printed: No, corrected: None },
    RowData { id: "4k", support: &[0, 1, 2, 3], printed: Deltas(D1_EITHER), corrected: None },
    RowData { id: "4l", support: &[0, 1, 6, 7], printed: Deltas(D1_EITHER), corrected: None },
    RowData { id: "4m", support: &[0, 2, 5, 7], printed: Deltas(D1_EITHER), corrected: None },
    RowData { id: "4n", support: &[0, 3, 4, 7], printed: Deltas(D1_EITHER), corrected: None },
    RowData { id: "5a", support: &[0, 1, 2, 3, 4], printed: Deltas(&[&[eq(1)]]), corrected: None },
    RowData { id: "5b", support: &[0, 1, 2, 4, 5], printed: Deltas(&[&[eq(5)]]), corrected: None },
    RowData { id: "5c", support: &[0, 1, 2, 4, 6], printed: Deltas(&[&[eq(9)]]), corrected: None },
    RowData { id: "5d", support: &[0, 1, 2, 4, 7], printed: Deltas(&[&[eq(11)]]), corrected: None },
    RowData { id: "5e", support: &[0, 1, 2, 5, 6], printed: Deltas(&[&[eq(10)]]), corrected: None },
    RowData { id: "5f", support: &[0, 1, 2, 5, 7], printed: Deltas(&[&[eq(9)]]), corrected: None },
    RowData { id: "5g", support: &[0, 1, 2, 6, 7], printed: Deltas(&[&[eq(5)]]), corrected: None },
    RowData {
        id: "6a",
        support: &[0, 1, 2, 3, 4, 5],
        printed: Deltas(&[&[eq(1), eq(2)], &[inv(1), inv(2)]]),
        corrected: None,
    },
    RowData {
        id: "6b",
        support: &[0, 1, 2, 3, 4, 6],
        printed: Deltas(&[&[eq(1), eq(3)], &[inv(1), inv(3)]]),
        corrected: None,
    },
    RowData {
        id: "6c",
        support: &[0, 1, 2, 3, 4, 7],
        printed: Deltas(&[&[eq(1), eq(4)], &[inv(1), inv(4)]]),
        corrected: Some((
            &[&[eq(1), eq(4)], &[eq(1), inv(4)]],
            "the stabilizing flip 011 swaps a↔d, b↔c, e↔f, which fixes Δ₁ and inverts Δ₄",
        )),
    },
    RowData {
        id: "6d",
        support: &[0, 1, 2, 4, 5, 6],
        printed: Deltas(&[&[eq(5), eq(6)], &[inv(5), inv(6)]]),
        corrected: None,
    },
    RowData {
        id: "6e",
        support: &[0, 1, 2, 4, 5, 7],
        printed: Deltas(&[&[eq(5), eq(3)], &[eq(5), inv(3)]]),
        corrected: None,
    },
    RowData {
        id: "6f",
        support: &[0, 1, 2, 5, 6, 7],
        printed: Deltas(&[&[eq(2), eq(6)]]),
        corrected: None,
    },
    RowData {
        id: "6g",
        support: &[0, 1, 3, 5, 6, 7],
        printed: Deltas(&[&[eq(2), eq(7)], &[inv(2), eq(7)]]),
        corrected: None,
    },
    RowData {
        id: "7",
        support: &[0, 1, 2, 3, 4, 5, 6],
        printed: Deltas(&[&[eq(1), eq(2), eq(8)]]),
        corrected: None,
    },
    RowData {
        id: "8",
        support: &[0, 1, 2, 3, 4, 5, 6, 7],
        printed: Appendix,
        corrected: None,
    },
];

/// `num'/den' = num/den` as printed: primed side over φ, unprimed over ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrintedRatio {
    pub primed: (&'static str, &'static str),
    pub unprimed: (&'static str, &'static str),
}

impl PrintedRatio {
    /// The condition as typeset, e.g. `a'd'/b'c'=ad/bc`.
    pub fn text(&self) -> String {
        let prime = |s: &str| s.chars().flat_map(|c| [c, '\'']).collect::<String>();
        format!(
            "{}/{}={}/{}",
            prime(self.primed.0),
            prime(self.primed.1),
            self.unprimed.0,
            self.unprimed.1
        )
    }
}

const fn r(pn: &'static str, pd: &'static str, qn: &'static str, qd: &'static str) -> PrintedRatio {
    PrintedRatio {
        primed: (pn, pd),
        unprimed: (qn, qd),
    }
}

/// One appendix case: the operator combination shown and its six conditions.
pub struct AppendixCase {
    pub number: u8,
    /// Flip mask read off the operators displayed with the case.
    pub printed_mask: u8,
    pub conditions: [PrintedRatio; 6],
}

pub const APPENDIX: [AppendixCase; 8] = [
    AppendixCase {
        number: 1,
        printed_mask: 0b000,
        conditions: [
            r("ad", "bc", "ad", "bc"),
            r("af", "be", "af", "be"),
            r("ah", "bg", "ah", "bg"),
            r("ag", "ce", "ag", "ce"),
            r("ah", "cf", "ah", "cf"),
            r("ah", "dc", "ah", "dc"),
        ],
    },
    AppendixCase {
        number: 2,
        printed_mask: 0b001,
        conditions: [
            r("bc", "ad", "ad", "bc"),
            r("be", "af", "af", "be"),
            r("bg", "de", "ah", "cf"),
            r("bg", "ah", "ah", "bg"),
            r("bh", "df", "ag", "ce"),
            r("bg", "cf", "ah", "ed"),
        ],
    },
    AppendixCase {
        number: 3,
        printed_mask: 0b100,
        conditions: [
            r("eh", "gf", "ad", "bc"),
            r("be", "af", "af", "be"),
            r("de", "cf", "ah", "bg"),
            r("ce", "ag", "ag", "ce"),
            r("de", "bg", "ah", "cf"),
            r("de", "ah", "ah", "ed"),
        ],
    },
    AppendixCase {
        number: 4,
        printed_mask: 0b010,
        conditions: [
            r("bc", "ad", "ad", "bc"),
            r("ch", "dg", "af", "be"),
            r("cf", "de", "ah", "bg"),
            r("ce", "ag", "ag", "ce"),
            r("cf", "ah", "ah", "cf"),
            r("cf", "bg", "ah", "de"),
        ],
    },
    AppendixCase {
        number: 5,
        printed_mask: 0b111,
        conditions: [
            r("ah", "bg", "ah", "bg"),
            r("ah", "cf", "ah", "cf"),
            r("ah", "de", "ah", "de"),
            r("ad", "bc", "eh", "dg"),
            r("af", "be", "ch", "dg"),
            r("ag", "ce", "bh", "df"),
        ],
    },
    AppendixCase {
        number: 6,
        printed_mask: 0b110,
        conditions: [
            r("ah", "bg", "bg", "ah"),
            r("bc", "ad", "eh", "gf"),
            r("ah", "cf", "bg", "de"),
            r("ah", "de", "bg", "cf"),
            r("be", "af", "ch", "dg"),
            r("ag", "ce", "ag", "ce"),
        ],
    },
    AppendixCase {
        number: 7,
        printed_mask: 0b111,
        conditions: [
            r("ad", "bc", "ad", "bc"),
            r("cf", "ah", "bg", "ae"),
            r("cf", "bg", "bg", "cf"),
            r("bf", "ae", "cg", "dh"),
            r("ce", "ag", "bh", "df"),
            r("de", "ah", "ah", "de"),
        ],
    },
    AppendixCase {
        number: 8,
        printed_mask: 0b101,
        conditions: [
            r("bc", "ad", "eh", "fg"),
            r("ce", "ag", "bh", "af"),
            r("af", "be", "af", "be"),
            r("bg", "ah", "de", "cf"),
            r("cf", "ah", "ah", "cf"),
            r("de", "ah", "bg", "cf"),
        ],
    },
];

/// A corrected appendix condition: `(case, position, replacement, note)`.
pub struct AppendixErratum {
    pub case: u8,
    pub position: usize,
    pub replacement: PrintedRatio,
    pub note: &'static str,
}

pub const APPENDIX_ERRATA: [AppendixErratum; 5] = [
    AppendixErratum {
        case: 1,
        position: 5,
        replacement: r("ah", "de", "ah", "de"),
        note: "ah/dc is not invariant under diagonal operators; ah/de is",
    },
    AppendixErratum {
        case: 5,
        position: 3,
        replacement: r("ad", "bc", "eh", "fg"),
        note: "eh/dg is not invariant; the all-flip image of ad/bc is eh/fg",
    },
    AppendixErratum {
        case: 7,
        position: 1,
        replacement: r("cf", "ah", "bg", "de"),
        note: "bg/ae is not invariant; under flip 011 c'f'/a'h' pairs with bg/de",
    },
    AppendixErratum {
        case: 7,
        position: 3,
        replacement: r("be", "af", "ch", "dg"),
        note: "b'f'/a'e' and cg/dh are not invariant; e↔f and g↔h transposed",
    },
    AppendixErratum {
        case: 8,
        position: 1,
        replacement: r("ce", "ag", "bh", "df"),
        note: "bh/af is not invariant; under flip 101 c'e'/a'g' pairs with bh/df",
    },
];

/// Case 7 shows the all-antidiagonal operator (like case 5) but its
/// conditions belong to B and C antidiagonal.
pub const APPENDIX_MASK_ERRATA: [(u8, u8, &str); 1] = [(
    7,
    0b011,
    "case 7 repeats the all-antidiagonal operator of case 5; its conditions match only B and C antidiagonal",
)];

/// The mask each case actually describes once the mask erratum is applied.
pub fn resolved_mask(case: &AppendixCase) -> FlipMask {
    let bits = APPENDIX_MASK_ERRATA
        .iter()
        .find(|(c, _, _)| *c == case.number)
        .map_or(case.printed_mask, |(_, m, _)| *m);
    FlipMask::new(bits).expect("three bits")
}

/// Conditions of a case with the letter-level errata applied.
pub fn resolved_conditions(case: &AppendixCase) -> [PrintedRatio; 6] {
    let mut out = case.conditions;
    for e in APPENDIX_ERRATA.iter().filter(|e| e.case == case.number) {
        out[e.position] = e.replacement;
    }
    out
}
