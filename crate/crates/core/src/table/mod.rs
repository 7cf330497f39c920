//! The registry of the 45 support classes, support canonicalization, Δ
//! invariants, and the table-driven class comparison.
//!
//! Each row fixes a representative support; every nonempty support is the
//! image of exactly one representative under some local flip. Rows with a
//! continuum of classes carry ratio conditions relating the target state
//! (primed letters) to the source state (unprimed letters).

pub mod appendix;
pub mod data;
pub mod monomial;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::coherence::{fine_descriptor_with, slocc_class_with, tangle_warning, three_tangle};
use crate::coherence::{FineDescriptor, SloccClass};
use crate::error::TableError;
use crate::lattice;
use crate::sio::{exponent_matrix, kernel_characters};
use crate::state::{FlipMask, SupportPattern, Thresholds, ThreeQubitPureState};

use data::{DeltaTerm, PrintedConditions, RowData, ROWS};
pub use monomial::{Conjunction, Monomial, RatioEquality};

/// Index of a registry row; displays as the printed label (`"4k"`, `"7"`, …).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowId(u8);

impl RowId {
    pub const COUNT: usize = ROWS.len();

    pub fn all() -> impl Iterator<Item = RowId> {
        (0..Self::COUNT as u8).map(RowId)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn as_str(self) -> &'static str {
        ROWS[self.index()].id
    }

    /// Number of product terms of the row's states.
    pub fn terms(self) -> usize {
        ROWS[self.index()].support.len()
    }

    fn data(self) -> &'static RowData {
        &ROWS[self.index()]
    }
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RowId {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RowId::all()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| TableError::UnknownRow(s.to_string()))
    }
}

impl Serialize for RowId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn delta_name(i: u8) -> String {
    format!("Δ{}", monomial::subscript(i))
}

fn render_term(t: &DeltaTerm) -> String {
    let n = delta_name(t.delta);
    if t.reciprocal {
        format!("{n}'=1/{n}")
    } else {
        format!("{n}'={n}")
    }
}

fn render_delta_disjuncts(d: &[&[DeltaTerm]]) -> String {
    d.iter()
        .map(|c| c.iter().map(render_term).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join(" or ")
}

fn delta_monomial(i: u8, support: SupportPattern) -> Monomial {
    let d = data::delta(i);
    Monomial::from_letters(d.num, d.den, support)
}

fn delta_conditions(d: &[&[DeltaTerm]], support: SupportPattern) -> Vec<Conjunction> {
    d.iter()
        .map(|c| {
            c.iter()
                .map(|t| {
                    let m = delta_monomial(t.delta, support);
                    RatioEquality {
                        primed: m,
                        unprimed: if t.reciprocal { m.inverse() } else { m },
                    }
                })
                .collect()
        })
        .collect()
}

fn printed_ratio_equality(p: &data::PrintedRatio) -> RatioEquality {
    RatioEquality {
        primed: Monomial::from_letters(p.primed.0, p.primed.1, SupportPattern::FULL),
        unprimed: Monomial::from_letters(p.unprimed.0, p.unprimed.1, SupportPattern::FULL),
    }
}

/// Generators `(primed, −unprimed)` in ℤ¹⁶ of the multiplicative relations a
/// conjunction imposes. Two conjunctions define the same relation between
/// generic states exactly when these lattices agree.
pub fn relation_lattice(conj: &[RatioEquality]) -> Vec<Vec<i64>> {
    conj.iter()
        .map(|e| {
            e.primed
                .0
                .iter()
                .copied()
                .chain(e.unprimed.0.iter().map(|x| -x))
                .collect()
        })
        .collect()
}

/// Hermite normal form of the relation lattice; equal keys ⇔ equal lattices.
pub fn relation_key(conj: &[RatioEquality]) -> Vec<Vec<i64>> {
    let gens = relation_lattice(conj);
    if gens.is_empty() {
        return Vec::new();
    }
    let ech = lattice::row_echelon(&gens);
    ech.reduced[..ech.rank()].to_vec()
}

/// Saturated kernel basis for `support`, as monomials over basis indices.
/// The kernel does not depend on the family: a flip only permutes columns.
pub fn kernel_monomials(support: SupportPattern) -> Vec<Monomial> {
    kernel_characters(&exponent_matrix(support, FlipMask::IDENTITY))
        .iter()
        .map(|u| Monomial(u.by_basis_index()))
        .collect()
}

/// The relation forced between `ψ` and `φ = T ψ` when `T` has flip mask `mask`
/// and `basis` generates the kernel: `Π φ_j^{u(j⊕mask)} = Π ψ_k^{u(k)}`.
pub fn family_conditions(basis: &[Monomial], mask: FlipMask) -> Conjunction {
    basis
        .iter()
        .map(|u| RatioEquality {
            primed: u.permuted(mask),
            unprimed: *u,
        })
        .collect()
}

fn lattice_of(monos: &[Monomial]) -> Vec<Vec<i64>> {
    monos.iter().map(|m| m.0.to_vec()).collect()
}

/// One row of the registry.
#[derive(Debug, Clone)]
pub struct TableRow {
    id: RowId,
    rep_support: SupportPattern,
    printed: PrintedConditions,
    erratum: Option<&'static str>,
    conditions: Vec<Conjunction>,
    named: Vec<(String, Monomial)>,
    kernel: Vec<Monomial>,
    derived: Vec<(FlipMask, Conjunction)>,
}

impl TableRow {
    fn build(id: RowId, mutate: bool) -> TableRow {
        let d = id.data();
        let support = SupportPattern::from_indices(d.support);
        let decision: Vec<Conjunction> = match (&d.printed, d.corrected) {
            (_, Some((c, _))) => delta_conditions(c, support),
            (PrintedConditions::No, None) => Vec::new(),
            (PrintedConditions::Deltas(c), None) => delta_conditions(c, support),
            (PrintedConditions::Appendix, None) => data::APPENDIX
                .iter()
                .map(|case| {
                    data::resolved_conditions(case)
                        .iter()
                        .map(printed_ratio_equality)
                        .collect()
                })
                .collect(),
        };
        let conditions = if mutate {
            decision
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|e| RatioEquality {
                            primed: e.primed,
                            unprimed: e.unprimed.scaled(2),
                        })
                        .collect()
                })
                .collect()
        } else {
            decision
        };

        let mut named: Vec<(String, Monomial)> = Vec::new();
        let mut indices = BTreeSet::new();
        if let PrintedConditions::Deltas(c) = &d.printed {
            indices.extend(c.iter().flat_map(|x| x.iter().map(|t| t.delta)));
        }
        if let Some((c, _)) = d.corrected {
            indices.extend(c.iter().flat_map(|x| x.iter().map(|t| t.delta)));
        }
        for i in indices {
            named.push((delta_name(i), delta_monomial(i, support)));
        }
        if matches!(d.printed, PrintedConditions::Appendix) {
            for p in data::resolved_conditions(&data::APPENDIX[0]) {
                let m = printed_ratio_equality(&p).unprimed;
                let name = (1..=data::DELTAS.len() as u8)
                    .find(|&i| delta_monomial(i, support) == m)
                    .map_or_else(|| m.render(support, false), delta_name);
                named.push((name, m));
            }
        }

        let kernel = kernel_monomials(support);
        let named_monos: Vec<Monomial> = named.iter().map(|(_, m)| *m).collect();
        let basis = if !kernel.is_empty()
            && lattice::same_lattice(&lattice_of(&named_monos), &lattice_of(&kernel))
        {
            named_monos
        } else {
            kernel.clone()
        };
        let mut derived: Vec<(FlipMask, Conjunction)> = Vec::new();
        if !kernel.is_empty() {
            let mut seen = BTreeSet::new();
            for m in support.stabilizer() {
                let c = family_conditions(&basis, m);
                if seen.insert(relation_key(&c)) {
                    derived.push((m, c));
                }
            }
        }

        TableRow {
            id,
            rep_support: support,
            printed: d.printed.clone(),
            erratum: d.corrected.map(|(_, note)| note),
            conditions,
            named,
            kernel,
            derived,
        }
    }

    pub fn id(&self) -> RowId {
        self.id
    }

    pub fn rep_support(&self) -> SupportPattern {
        self.rep_support
    }

    /// Coefficient letter of each representative basis index, ascending.
    pub fn letters(&self) -> Vec<(usize, char)> {
        self.rep_support
            .indices()
            .zip("abcdefgh".chars())
            .collect()
    }

    /// Representative written as a ket sum, e.g. `a|000⟩+b|111⟩`.
    pub fn representative(&self) -> String {
        self.letters()
            .iter()
            .map(|(k, l)| format!("{l}|{k:03b}⟩"))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn printed(&self) -> &PrintedConditions {
        &self.printed
    }

    /// The condition column as printed.
    pub fn printed_text(&self) -> String {
        match &self.printed {
            PrintedConditions::No => "No".to_string(),
            PrintedConditions::Deltas(c) => render_delta_disjuncts(c),
            PrintedConditions::Appendix => "listed per operator combination, cases (1)–(8)".to_string(),
        }
    }

    /// Why the decision data departs from the printed column, if it does.
    pub fn erratum(&self) -> Option<&'static str> {
        self.erratum
    }

    /// Replacement condition text when an erratum applies.
    pub fn corrected_text(&self) -> Option<String> {
        self.id.data().corrected.map(|(c, _)| render_delta_disjuncts(c))
    }

    /// Disjuncts used by [`Registry::compare`]; empty means one class per orbit.
    pub fn conditions(&self) -> &[Conjunction] {
        &self.conditions
    }

    pub fn has_continuum(&self) -> bool {
        !self.kernel.is_empty()
    }

    /// Named ratios evaluated by [`compute_deltas`].
    pub fn named_ratios(&self) -> &[(String, Monomial)] {
        &self.named
    }

    /// Saturated kernel basis of the representative support.
    pub fn kernel(&self) -> &[Monomial] {
        &self.kernel
    }

    /// Conditions generated from the kernel, one disjunct per distinct
    /// relation among the stabilizing flips, tagged with a mask producing it.
    pub fn derived_conditions(&self) -> &[(FlipMask, Conjunction)] {
        &self.derived
    }

    fn render_equality(&self, e: &RatioEquality) -> String {
        let lookup = |m: &Monomial| {
            self.named.iter().find_map(|(n, x)| {
                if x == m {
                    Some((n.clone(), false))
                } else if x.inverse() == *m {
                    Some((n.clone(), true))
                } else {
                    None
                }
            })
        };
        match (lookup(&e.primed), lookup(&e.unprimed)) {
            (Some((p, pinv)), Some((q, qinv))) if p.starts_with('Δ') && q.starts_with('Δ') => {
                let rhs = if pinv != qinv { format!("1/{q}") } else { q };
                format!("{p}'={rhs}")
            }
            _ => e.render(self.rep_support),
        }
    }

    /// Each derived disjunct rendered, with the mask that produced it.
    pub fn derived_disjuncts(&self) -> Vec<(FlipMask, String)> {
        self.derived
            .iter()
            .map(|(m, c)| {
                let text = c
                    .iter()
                    .map(|e| self.render_equality(e))
                    .collect::<Vec<_>>()
                    .join(", ");
                (*m, text)
            })
            .collect()
    }

    pub fn derived_text(&self) -> String {
        if self.derived.is_empty() {
            return "none".to_string();
        }
        self.derived_disjuncts()
            .into_iter()
            .map(|(_, t)| t)
            .collect::<Vec<_>>()
            .join(" or ")
    }
}

/// Named ratios of a state bound to a row's letters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaInvariants {
    pub values: Vec<(String, Complex64)>,
}

impl DeltaInvariants {
    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Outcome of comparing two states through the registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableVerdict {
    pub psi_row: RowId,
    pub phi_row: RowId,
    /// Index of the first satisfied disjunct, for rows with conditions.
    pub satisfied: Option<usize>,
    pub equivalent: bool,
}

pub struct Registry {
    rows: Vec<TableRow>,
    canon: [Option<(RowId, FlipMask)>; 256],
    mutated: bool,
}

impl Registry {
    fn build(mutated: bool) -> Registry {
        let rows: Vec<TableRow> = RowId::all().map(|id| TableRow::build(id, mutated)).collect();
        let mut canon = [None; 256];
        for (bits, slot) in canon.iter_mut().enumerate().skip(1) {
            let p = SupportPattern::from_bits(bits as u8);
            *slot = FlipMask::all().find_map(|m| {
                let q = p.flipped(m);
                rows.iter().find(|r| r.rep_support == q).map(|r| (r.id, m))
            });
        }
        Registry {
            rows,
            canon,
            mutated,
        }
    }

    /// Registry built from the printed tables (with errata applied to decisions).
    pub fn published() -> &'static Registry {
        static R: OnceLock<Registry> = OnceLock::new();
        R.get_or_init(|| Registry::build(false))
    }

    /// Deliberately corrupted copy: every condition compares against the
    /// square of the source ratio. Used to check that the harness notices.
    pub fn mutated() -> &'static Registry {
        static R: OnceLock<Registry> = OnceLock::new();
        R.get_or_init(|| Registry::build(true))
    }

    pub fn is_mutated(&self) -> bool {
        self.mutated
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn row(&self, id: RowId) -> &TableRow {
        &self.rows[id.index()]
    }

    /// Rows whose representative lies in the orbit of `p`.
    pub fn rows_in_orbit(&self, p: SupportPattern) -> Vec<RowId> {
        let orbit = p.orbit();
        self.rows
            .iter()
            .filter(|r| orbit.contains(&r.rep_support))
            .map(|r| r.id)
            .collect()
    }

    /// Row of `p` and the smallest mask taking `p` to its representative.
    pub fn canonicalize(&self, p: SupportPattern) -> Result<(RowId, FlipMask), TableError> {
        self.canon[p.bits() as usize].ok_or(TableError::NoRow(p))
    }

    pub fn compute_deltas(
        &self,
        state: &ThreeQubitPureState,
        id: RowId,
        flip: FlipMask,
        eps_supp: f64,
    ) -> Result<DeltaInvariants, TableError> {
        let row = self.row(id);
        let flipped = state.apply_flip(flip);
        let found = flipped.support(eps_supp);
        if found != row.rep_support {
            return Err(TableError::WrongRow {
                row: id.to_string(),
                expected: row.rep_support,
                found,
            });
        }
        Ok(DeltaInvariants {
            values: row
                .named
                .iter()
                .map(|(n, m)| (n.clone(), m.evaluate(&flipped)))
                .collect(),
        })
    }

    /// Table verdict for `ψ → φ`: same row, and for rows with conditions at
    /// least one disjunct holding between the flipped representatives.
    pub fn compare(
        &self,
        psi: &ThreeQubitPureState,
        phi: &ThreeQubitPureState,
        eps_supp: f64,
    ) -> TableVerdict {
        let (psi_row, psi_flip) = self
            .canonicalize(psi.support(eps_supp))
            .expect("valid states have nonempty support");
        let (phi_row, phi_flip) = self
            .canonicalize(phi.support(eps_supp))
            .expect("valid states have nonempty support");
        if psi_row != phi_row {
            return TableVerdict {
                psi_row,
                phi_row,
                satisfied: None,
                equivalent: false,
            };
        }
        let conditions = &self.row(psi_row).conditions;
        if conditions.is_empty() {
            return TableVerdict {
                psi_row,
                phi_row,
                satisfied: None,
                equivalent: true,
            };
        }
        let (src, dst) = (psi.apply_flip(psi_flip), phi.apply_flip(phi_flip));
        let satisfied = conditions
            .iter()
            .position(|c| c.iter().all(|e| e.holds(&src, &dst)));
        TableVerdict {
            psi_row,
            phi_row,
            satisfied,
            equivalent: satisfied.is_some(),
        }
    }

    pub fn same_class(&self, psi: &ThreeQubitPureState, phi: &ThreeQubitPureState) -> bool {
        self.compare(psi, phi, Thresholds::default().supp).equivalent
    }
}

pub fn canonicalize_support(p: SupportPattern) -> Result<(RowId, FlipMask), TableError> {
    Registry::published().canonicalize(p)
}

pub fn compute_deltas(
    state: &ThreeQubitPureState,
    row: RowId,
    flip: FlipMask,
) -> Result<DeltaInvariants, TableError> {
    Registry::published().compute_deltas(state, row, flip, Thresholds::default().supp)
}

pub fn same_class_by_table(psi: &ThreeQubitPureState, phi: &ThreeQubitPureState) -> bool {
    Registry::published().same_class(psi, phi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub row: RowId,
    pub flip_used: FlipMask,
    pub support: SupportPattern,
    pub normalized: ThreeQubitPureState,
    pub deltas: DeltaInvariants,
    pub slocc: SloccClass,
    pub tangle: f64,
    pub fine: FineDescriptor,
    pub warnings: Vec<String>,
}

pub fn classify(state: &ThreeQubitPureState) -> Result<Classification, TableError> {
    classify_with(state, &Thresholds::default())
}

pub fn classify_with(
    state: &ThreeQubitPureState,
    thr: &Thresholds,
) -> Result<Classification, TableError> {
    let normalized = state.normalize();
    let support = normalized.support(thr.supp);
    let (row, flip_used) = canonicalize_support(support)?;
    let deltas = Registry::published().compute_deltas(&normalized, row, flip_used, thr.supp)?;
    let tangle = three_tangle(&normalized);
    let warnings = tangle_warning(tangle).into_iter().collect();
    Ok(Classification {
        row,
        flip_used,
        support,
        deltas,
        slocc: slocc_class_with(&normalized, thr),
        tangle,
        fine: fine_descriptor_with(&normalized, thr),
        warnings,
        normalized,
    })
}
