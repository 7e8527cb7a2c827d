//! Job orchestration: braid parsing, invariant computation, and assembly of
//! the result document.

use crate::doc::*;
use mmr_core::braid::BraidWord;
use mmr_core::burau::alexander_conway;
use mmr_core::mmexpand::{extract_d, recover_p};
use mmr_core::perturb::{line_via_perturbation, KappaVariant};
use mmr_core::qtrace::colored_jones;
use mmr_core::{Error, Rat};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to compute one document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub braid: String,
    pub strands: usize,
    pub alpha: Vec<u32>,
    pub h_order: usize,
    pub lines: usize,
    pub cross_check: bool,
}

impl JobSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.alpha.is_empty() {
            return Err(Error::BadInput("no alpha values requested".into()));
        }
        if let Some(&a) = self.alpha.iter().find(|&&a| a < 1) {
            return Err(Error::BadInput(format!("alpha must be >= 1, got {a}")));
        }
        if self.lines > self.h_order {
            return Err(Error::BadInput(format!(
                "line index {} exceeds the truncation order {}",
                self.lines, self.h_order
            )));
        }
        Ok(())
    }
}

/// Parse an alpha specification: a value `3`, a list `2,3,5`, or an
/// inclusive range `2..6`.
pub fn parse_alpha(spec: &str) -> Result<Vec<u32>, Error> {
    let bad = |s: &str| Error::BadInput(format!("cannot parse alpha specification '{s}'"));
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad(spec))?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad(spec))?;
        if lo > hi {
            return Err(Error::BadInput(format!("empty alpha range '{spec}'")));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| bad(spec)))
        .collect()
}

/// Infer the strand count from a braid word when not given explicitly.
pub fn infer_strands(braid: &str) -> Result<usize, Error> {
    let mut max_abs = 0i64;
    for part in braid.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: i64 = part
            .parse()
            .map_err(|_| Error::BadInput(format!("cannot parse braid letter '{part}'")))?;
        max_abs = max_abs.max(v.abs());
    }
    Ok(max_abs as usize + 1)
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn rat_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

/// Compute the document for one job.  Input-level problems come back as
/// `Err`; violated invariants inside the math modules panic and are mapped
/// to the internal-consistency exit code by `main`.
pub fn run(job: &JobSpec) -> Result<ResultDocument, Error> {
    job.validate()?;
    let braid = BraidWord::parse(&job.braid, job.strands)?;
    braid.require_knot()?;

    let closure = ClosureBlock {
        is_knot: true,
        writhe: braid.writhe(),
        strands: braid.strands(),
        symmetrization_exponent: braid.symmetrization_exponent(),
    };

    let delta = alexander_conway(&braid)?;
    let alexander = AlexanderBlock {
        z2_coeffs: rat_vec(delta.coeffs()),
    };

    let mut jones = Vec::new();
    for &alpha in &job.alpha {
        let j = colored_jones(&braid, alpha)?;
        jones.push(JonesBlock {
            alpha,
            framing_quarter: j.framing_quarter,
            quarter_terms: j
                .v_quarter
                .iter()
                .map(|(e, c)| (*e, rat_str(c)))
                .collect(),
        });
    }

    let table = extract_d(&braid, job.h_order)?;
    let mm_table = TableBlock {
        order: table.order(),
        samples: table.samples().to_vec(),
        entries: table
            .iter()
            .map(|(&(m, n), v)| TableEntry {
                m,
                n,
                value: rat_str(v),
            })
            .collect(),
    };

    let mut lines = Vec::new();
    for n in 0..=job.lines {
        let r = recover_p(&braid, n, &table)?;
        lines.push(LineBlock {
            n,
            d: rat_vec(&r.d),
            p: r.p.as_deref().map(rat_vec),
            residual_zero_z_order: r.residual_zero_z_order,
            undetermined_at: r.undetermined_at,
            d_integral: r.d_integral,
            p_integral: r.p_integral,
            reliable_m_max: (job.h_order - n) / 2,
        });
    }

    let cross_check = if job.cross_check {
        let mut cc_lines = Vec::new();
        for n in 0..=job.lines.min(2) {
            let direct = line_via_perturbation(&braid, n, job.h_order, KappaVariant::Direct)?;
            let extraction = recover_p(&braid, n, &table)?;
            let agrees_d = direct.d == extraction.d;
            let agrees_p = extraction.p.as_ref().map(|p| Some(p) == direct.p.as_ref());
            let shift_variant = {
                let braid = braid.clone();
                let order = job.h_order;
                match std::panic::catch_unwind(move || {
                    line_via_perturbation(&braid, n, order, KappaVariant::Shift)
                }) {
                    Ok(Ok(r)) => {
                        if r == direct {
                            "agrees".to_string()
                        } else {
                            "differs".to_string()
                        }
                    }
                    Ok(Err(e)) => format!("error: {e}"),
                    Err(_) => "inconsistent".to_string(),
                }
            };
            cc_lines.push(CrossCheckLine {
                n,
                p: direct.p.as_deref().map(rat_vec).unwrap_or_default(),
                agrees_d,
                agrees_p,
                shift_variant,
            });
        }
        Some(CrossCheckBlock {
            kappa_variant: KappaVariant::Direct.as_str().to_string(),
            lines: cc_lines,
        })
    } else {
        None
    };

    Ok(ResultDocument {
        schema: SCHEMA,
        version: VERSION.to_string(),
        input: InputEcho {
            braid: job.braid.clone(),
            strands: job.strands,
            alpha: job.alpha.clone(),
            h_order: job.h_order,
            lines: job.lines,
            cross_check: job.cross_check,
        },
        closure,
        alexander,
        jones,
        mm_table,
        lines,
        degree_policy: DegreePolicy {
            h_order: job.h_order,
            line_prefix_rule: "d^(n)_m reported for 2m + n <= h_order".to_string(),
            stabilization_guard:
                "trailing ceil((m_max+1)/3) coefficients of P-candidate must vanish".to_string(),
        },
        cross_check,
        provenance: Provenance {
            jones: "rmatrix-quantum-trace".to_string(),
            alexander: "reduced-burau-determinant".to_string(),
            mm_table: "alpha-sample-interpolation".to_string(),
            lines: "delta-power-stabilization".to_string(),
            cross_check: if job.cross_check {
                Some("perturbed-burau-pairing".to_string())
            } else {
                None
            },
        },
    })
}
