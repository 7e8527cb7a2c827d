//! The JSON result document.  All exact values are serialized as strings
//! ("p" or "p/q"); nothing in the schema is a binary float.  Struct field
//! order fixes the byte layout, so a given job and tool version always
//! produces identical output.

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ResultDocument {
    pub schema: u32,
    pub version: String,
    pub input: InputEcho,
    pub closure: ClosureBlock,
    pub alexander: AlexanderBlock,
    pub jones: Vec<JonesBlock>,
    pub mm_table: TableBlock,
    pub lines: Vec<LineBlock>,
    pub degree_policy: DegreePolicy,
    pub cross_check: Option<CrossCheckBlock>,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct InputEcho {
    pub braid: String,
    pub strands: usize,
    pub alpha: Vec<u32>,
    pub h_order: usize,
    pub lines: usize,
    pub cross_check: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ClosureBlock {
    pub is_knot: bool,
    pub writhe: i64,
    pub strands: usize,
    /// `(strands - 1 - writhe) / 2`; even parity of the numerator is what
    /// makes the closure a knot candidate.
    pub symmetrization_exponent: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct AlexanderBlock {
    /// Conway-normalized coefficients of `z^(2k)`, index `k`.
    pub z2_coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct JonesBlock {
    pub alpha: u32,
    /// Framing correction applied, in quarter units of the exponent.
    pub framing_quarter: i64,
    /// `(exponent in quarter units, coefficient)` pairs, ascending.
    pub quarter_terms: Vec<(i64, String)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TableBlock {
    pub order: usize,
    pub samples: Vec<u32>,
    pub entries: Vec<TableEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub m: usize,
    pub n: usize,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LineBlock {
    pub n: usize,
    /// `z^(2m)` coefficients of the line, index `m`.
    pub d: Vec<String>,
    /// Recovered numerator `P_n` as `z^(2m)` coefficients, when stabilized.
    pub p: Option<Vec<String>>,
    pub residual_zero_z_order: usize,
    pub undetermined_at: Option<usize>,
    pub d_integral: bool,
    pub p_integral: bool,
    /// Largest `m` with `2m + n <= h_order`; past it the line prefix is not
    /// populated at this truncation order.
    pub reliable_m_max: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct DegreePolicy {
    pub h_order: usize,
    pub line_prefix_rule: String,
    pub stabilization_guard: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckBlock {
    /// Evaluation convention for the grading parameter in the perturbative
    /// pipeline ("direct" unless overridden).
    pub kappa_variant: String,
    pub lines: Vec<CrossCheckLine>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckLine {
    pub n: usize,
    /// Perturbative numerator `P_n`.
    pub p: Vec<String>,
    /// Line prefix agreement with the extraction pipeline.
    pub agrees_d: bool,
    /// Numerator agreement; `None` when the extraction side was
    /// undetermined at this truncation order.
    pub agrees_p: Option<bool>,
    /// Outcome of re-running under the shift-operator kappa reading:
    /// "agrees", "differs", or "inconsistent" (its numerator violates the
    /// t <-> 1/t symmetry and the pipeline refuses it).
    pub shift_variant: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub jones: String,
    pub alexander: String,
    pub mm_table: String,
    pub lines: String,
    pub cross_check: Option<String>,
}

/// Wrapper for `--table` batch runs.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BatchDocument {
    pub schema: u32,
    pub version: String,
    pub jobs: Vec<NamedResult>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct NamedResult {
    pub name: String,
    pub result: ResultDocument,
}

/// One record of a `--table` input file.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TableRecord {
    pub name: String,
    pub braid: String,
    #[serde(default)]
    pub strands: Option<usize>,
}

/// Render the document as human-readable text (same information, no JSON).
pub fn render_text(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(
        &mut out,
        format!(
            "braid [{}] on {} strands  (writhe {}, symmetrization exponent {})",
            doc.input.braid, doc.closure.strands, doc.closure.writhe,
            doc.closure.symmetrization_exponent
        ),
    );
    push(
        &mut out,
        format!("alexander-conway z^2 coefficients: [{}]", doc.alexander.z2_coeffs.join(", ")),
    );
    for j in &doc.jones {
        let terms: Vec<String> = j
            .quarter_terms
            .iter()
            .map(|(e, c)| format!("{c}*q^({e}/4)"))
            .collect();
        push(
            &mut out,
            format!("V_{} = {}", j.alpha, if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }),
        );
    }
    push(
        &mut out,
        format!(
            "table order {} from samples {:?}; nonzero entries:",
            doc.mm_table.order, doc.mm_table.samples
        ),
    );
    for e in &doc.mm_table.entries {
        if e.value != "0" {
            push(&mut out, format!("  D[m={}, n={}] = {}", e.m, e.n, e.value));
        }
    }
    for l in &doc.lines {
        let p = match &l.p {
            Some(p) => format!("P = [{}]", p.join(", ")),
            None => format!(
                "P undetermined at z^2-index {}",
                l.undetermined_at.map_or("?".to_string(), |i| i.to_string())
            ),
        };
        push(
            &mut out,
            format!(
                "line {}: d = [{}] (reliable m <= {}), {}",
                l.n,
                l.d.join(", "),
                l.reliable_m_max,
                p
            ),
        );
    }
    if let Some(cc) = &doc.cross_check {
        push(&mut out, format!("cross-check (kappa variant {}):", cc.kappa_variant));
        for l in &cc.lines {
            push(
                &mut out,
                format!(
                    "  line {}: perturbative P = [{}], d agrees: {}, p agrees: {}, shift variant: {}",
                    l.n,
                    l.p.join(", "),
                    l.agrees_d,
                    l.agrees_p.map_or("n/a".to_string(), |b| b.to_string()),
                    l.shift_variant
                ),
            );
        }
    }
    out
}
