//! Comparison of the per-combination ratio lists for the eight-term support
//! with the relations generated by the kernel for each flip mask.

use serde::Serialize;

use super::data::{self, AppendixCase, PrintedRatio};
use super::{family_conditions, kernel_monomials, printed_ratio_equality, relation_key};
use crate::state::{FlipMask, SupportPattern};

/// One printed condition and the masks under which it is a consequence of the
/// operator action.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub position: usize,
    pub text: String,
    /// Whether the unprimed side is invariant under diagonal operators.
    pub invariant: bool,
    pub valid_masks: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: u8,
    pub printed_mask: String,
    pub conditions: Vec<ConditionCheck>,
    /// Masks whose kernel relation equals the relation of the whole list.
    pub matching_masks: Vec<String>,
    pub reproduced: bool,
    /// The single other mask the list matches, when the printed one fails.
    pub alternative_mask: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub mask: String,
    pub family_number: u8,
    /// Cases whose list reproduces this family's relation.
    pub cases: Vec<u8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub cases: Vec<CaseReport>,
    pub families: Vec<FamilyReport>,
}

impl AppendixReport {
    /// Every case matches its printed mask or one unique alternative, and each
    /// of the eight families is reproduced by exactly one case.
    pub fn passes(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.reproduced || c.alternative_mask.is_some())
            && self.families.iter().all(|f| f.cases.len() == 1)
    }

    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.cases {
            if c.reproduced {
                continue;
            }
            match &c.alternative_mask {
                Some(m) => out.push(format!(
                    "case ({}) printed with mask {} matches only mask {m}",
                    c.case, c.printed_mask
                )),
                None => {
                    let bad: Vec<String> = c
                        .conditions
                        .iter()
                        .filter(|k| k.valid_masks.is_empty())
                        .map(|k| k.text.clone())
                        .collect();
                    out.push(format!(
                        "case ({}) printed with mask {} matches no mask; conditions valid under no mask: {}",
                        c.case,
                        c.printed_mask,
                        bad.join("; ")
                    ));
                }
            }
        }
        for f in &self.families {
            if f.cases.len() != 1 {
                out.push(format!(
                    "family {} ({}) reproduced by {} cases",
                    f.family_number,
                    f.mask,
                    f.cases.len()
                ));
            }
        }
        out
    }
}

fn check(
    conditions: impl Fn(&AppendixCase) -> [PrintedRatio; 6],
    mask_of: impl Fn(&AppendixCase) -> FlipMask,
) -> AppendixReport {
    let full = SupportPattern::FULL;
    let kernel = kernel_monomials(full);
    let kernel_vecs: Vec<Vec<i64>> = kernel.iter().map(|m| m.0.to_vec()).collect();
    let family_keys: Vec<(FlipMask, Vec<Vec<i64>>)> = FlipMask::all()
        .map(|m| (m, relation_key(&family_conditions(&kernel, m))))
        .collect();

    let cases: Vec<CaseReport> = data::APPENDIX
        .iter()
        .map(|case| {
            let printed_mask = mask_of(case);
            let printed = conditions(case);
            let eqs: Vec<_> = printed.iter().map(printed_ratio_equality).collect();
            let checks = eqs
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let invariant = crate::lattice::in_span(&kernel_vecs, &e.unprimed.0);
                    let valid_masks = FlipMask::all()
                        .filter(|&m| invariant && e.primed == e.unprimed.permuted(m))
                        .map(|m| m.ket())
                        .collect();
                    ConditionCheck {
                        position: i,
                        text: printed[i].text(),
                        invariant,
                        valid_masks,
                    }
                })
                .collect();
            let key = relation_key(&eqs);
            let matching: Vec<FlipMask> = family_keys
                .iter()
                .filter(|(_, k)| *k == key)
                .map(|(m, _)| *m)
                .collect();
            let reproduced = matching == [printed_mask];
            let alternative_mask = (!reproduced && matching.len() == 1).then(|| matching[0].ket());
            CaseReport {
                case: case.number,
                printed_mask: printed_mask.ket(),
                conditions: checks,
                matching_masks: matching.iter().map(|m| m.ket()).collect(),
                reproduced,
                alternative_mask,
            }
        })
        .collect();

    let families = FlipMask::all()
        .map(|m| FamilyReport {
            mask: m.ket(),
            family_number: m.family_number(),
            cases: cases
                .iter()
                .filter(|c| c.matching_masks.contains(&m.ket()))
                .map(|c| c.case)
                .collect(),
        })
        .collect();
    AppendixReport { cases, families }
}

/// The lists exactly as printed, against the operators printed with them.
pub fn printed_report() -> AppendixReport {
    check(
        |c| c.conditions,
        |c| FlipMask::new(c.printed_mask).expect("three bits"),
    )
}

/// The lists with letter-level corrections and the mask correction applied.
pub fn resolved_report() -> AppendixReport {
    check(data::resolved_conditions, data::resolved_mask)
}
