//! Output documents. Field order is fixed by declaration order, maps keep
//! insertion order, and floats use shortest round-trip formatting, so equal
//! inputs give byte-identical output.

use indexmap::IndexMap;
use serde::Serialize;
use slicckit::sio::{EquivalenceWitness, Mode, OperatorKind, Verdict};
use slicckit::table::appendix::{printed_report, resolved_report, AppendixReport};
use slicckit::table::TableVerdict;
use slicckit::{
    Classification, CoherenceNature, Complex64, FlipMask, MixtureComponent, MixtureComposition,
    Party, Registry, RowId, SloccClass, TableRow,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaskInfo {
    /// One bit per party, A first; `1` means antidiagonal.
    pub mask: String,
    /// Operator combination number, 1 to 8.
    pub family: u8,
}

impl From<FlipMask> for MaskInfo {
    fn from(m: FlipMask) -> Self {
        MaskInfo {
            mask: m.ket(),
            family: m.family_number(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction {
    pub nature: CoherenceNature,
    pub n_coherent: usize,
    pub n_incoherent: usize,
    pub components: Vec<MixtureComponent>,
}

impl Reduction {
    fn new(nature: CoherenceNature, mix: &MixtureComposition) -> Self {
        Reduction {
            nature,
            n_coherent: mix.n_coherent,
            n_incoherent: mix.n_incoherent,
            components: mix.components.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Descriptor {
    pub single: IndexMap<String, Reduction>,
    pub bipartite: IndexMap<String, Reduction>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub row: RowId,
    pub representative: String,
    pub flip: MaskInfo,
    pub support: Vec<usize>,
    pub normalized: Vec<Complex64>,
    pub deltas: IndexMap<String, Complex64>,
    pub slocc: SloccClass,
    pub tangle: f64,
    pub local_ranks: [u8; 3],
    pub descriptor: Descriptor,
    pub warnings: Vec<String>,
}

impl ClassificationReport {
    pub fn new(c: &Classification, local_ranks: [u8; 3]) -> Self {
        let single = Party::ALL
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let r = Reduction::new(c.fine.single_qubit_nature[i], &c.fine.single_qubit_mix[i]);
                (p.label().to_string(), r)
            })
            .collect();
        let bipartite = slicckit::coherence::BIPARTITE
            .iter()
            .enumerate()
            .map(|(i, set)| {
                let r = Reduction::new(c.fine.bipartite_nature[i], &c.fine.bipartite_mix[i]);
                (set.label(), r)
            })
            .collect();
        ClassificationReport {
            label: c.normalized.label().map(str::to_string),
            row: c.row,
            representative: Registry::published().row(c.row).representative(),
            flip: c.flip_used.into(),
            support: c.support.indices().collect(),
            normalized: c.normalized.amplitudes().to_vec(),
            deltas: c.deltas.values.iter().cloned().collect(),
            slocc: c.slocc,
            tangle: c.tangle,
            local_ranks,
            descriptor: Descriptor { single, bipartite },
            warnings: c.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorDoc {
    pub kind: &'static str,
    /// `(u, v)`: `diag(u, v)` or `antidiag(u, v)` with `u` top right.
    pub entries: [Complex64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCheck {
    pub psi_row: RowId,
    pub phi_row: RowId,
    pub equivalent: bool,
}

impl From<&TableVerdict> for TableCheck {
    fn from(v: &TableVerdict) -> Self {
        TableCheck {
            psi_row: v.psi_row,
            phi_row: v.phi_row,
            equivalent: v.equivalent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivVerdict {
    pub mode: Mode,
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<MaskInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IndexMap<String, OperatorDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_scale: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    /// Verdict of the table conditions, reported alongside the solver in SLICC mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableCheck>,
}

fn witness_doc(w: &EquivalenceWitness) -> IndexMap<String, OperatorDoc> {
    Party::ALL
        .iter()
        .map(|&p| {
            let op = w.triple.op(p);
            let kind = match op.kind() {
                OperatorKind::Diagonal => "diagonal",
                OperatorKind::Antidiagonal => "antidiagonal",
            };
            let (u, v) = op.entries();
            (p.label().to_string(), OperatorDoc { kind, entries: [u, v] })
        })
        .collect()
}

impl EquivVerdict {
    pub fn new(mode: Mode, verdict: &Verdict, table: Option<&TableVerdict>) -> Self {
        let table = table.map(TableCheck::from);
        match verdict {
            Verdict::Equivalent(w) => EquivVerdict {
                mode,
                equivalent: true,
                family: Some(w.family().into()),
                witness: Some(witness_doc(w)),
                global_scale: Some(w.global_scale),
                reason: None,
                table,
            },
            Verdict::NotEquivalent(m) => EquivVerdict {
                mode,
                equivalent: false,
                family: None,
                witness: None,
                global_scale: None,
                reason: Some(m.reason()),
                table,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedDoc {
    pub mask: String,
    pub family: u8,
    pub conditions: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowDoc {
    pub id: RowId,
    pub terms: usize,
    pub support: Vec<usize>,
    pub representative: String,
    pub infinite_classes: bool,
    pub printed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected: Option<String>,
    /// Named ratios as letter monomials, e.g. `"Δ₁": "ad/bc"`.
    pub ratios: IndexMap<String, String>,
    /// Saturated kernel basis of the representative support.
    pub kernel: Vec<String>,
    pub derived: Vec<DerivedDoc>,
}

impl RowDoc {
    pub fn new(row: &TableRow) -> Self {
        let support = row.rep_support();
        RowDoc {
            id: row.id(),
            terms: support.len(),
            support: support.indices().collect(),
            representative: row.representative(),
            infinite_classes: row.has_continuum(),
            printed: row.printed_text(),
            erratum: row.erratum(),
            corrected: row.corrected_text(),
            ratios: row
                .named_ratios()
                .iter()
                .map(|(n, m)| (n.clone(), m.render(support, false)))
                .collect(),
            kernel: row.kernel().iter().map(|m| m.render(support, false)).collect(),
            derived: row
                .derived_disjuncts()
                .into_iter()
                .map(|(m, conditions)| DerivedDoc {
                    mask: m.ket(),
                    family: m.family_number(),
                    conditions,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixDoc {
    /// The per-combination lists as printed.
    pub printed: AppendixReport,
    /// With the letter and mask corrections applied.
    pub resolved: AppendixReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegistryDoc {
    pub rows: Vec<RowDoc>,
    pub appendix: AppendixDoc,
}

impl RegistryDoc {
    pub fn new(registry: &Registry) -> Self {
        RegistryDoc {
            rows: registry.rows().iter().map(RowDoc::new).collect(),
            appendix: AppendixDoc {
                printed: printed_report(),
                resolved: resolved_report(),
            },
        }
    }

    pub fn markdown(&self) -> String {
        let mut out = String::from(
            "| Row | Representative | Printed conditions | Corrected | Derived from kernel |\n\
             |---|---|---|---|---|\n",
        );
        for r in &self.rows {
            let derived = if r.derived.is_empty() {
                "none".to_string()
            } else {
                r.derived
                    .iter()
                    .map(|d| d.conditions.as_str())
                    .collect::<Vec<_>>()
                    .join(" or ")
            };
            let cells = [
                r.id.to_string(),
                r.representative.clone(),
                r.printed.clone(),
                r.corrected.clone().unwrap_or_default(),
                derived,
            ];
            let cells: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }
}
