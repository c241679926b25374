//! JSON rendering of analysis results.

use std::collections::BTreeMap;

use phgen::ctrl::{ControlReport, Verdict};
use phgen::pencil::MinorId;
use phgen::phsys::ValidationReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct Dims {
    pub l: usize,
    pub n: usize,
    pub m: usize,
}

#[derive(Serialize)]
pub struct RanksOut {
    pub e_b: usize,
    pub e_a_b: usize,
    pub e_az_b: usize,
    pub generic: usize,
}

#[derive(Serialize)]
pub struct LocusOut {
    pub generic_rank: usize,
    pub generic_borderline: bool,
    /// `[re, im, rank]`.
    pub points: Vec<(f64, f64, usize)>,
    /// `[re, im]` of ambiguous candidates.
    pub borderline: Vec<[f64; 2]>,
}

#[derive(Serialize)]
pub struct MinorOut {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl From<&MinorId> for MinorOut {
    fn from(id: &MinorId) -> Self {
        MinorOut { rows: id.rows.clone(), cols: id.cols.clone() }
    }
}

#[derive(Serialize)]
pub struct CertificateOut {
    pub first: MinorOut,
    pub second: Option<MinorOut>,
    pub value: [f64; 2],
}

#[derive(Serialize)]
pub struct AnalysisOut {
    pub dims: Dims,
    pub class: String,
    pub field: String,
    pub verdicts: BTreeMap<&'static str, Verdict>,
    pub ranks: RanksOut,
    pub locus: LocusOut,
    pub certificate: Option<CertificateOut>,
}

impl AnalysisOut {
    pub fn new(dims: (usize, usize, usize), class: &str, field: &str, rep: &ControlReport<f64>) -> Self {
        let (l, n, m) = dims;
        AnalysisOut {
            dims: Dims { l, n, m },
            class: class.to_string(),
            field: field.to_string(),
            verdicts: rep.verdicts().map(|(c, v)| (c.name(), v)).collect(),
            ranks: RanksOut {
                e_b: rep.ranks.e_b,
                e_a_b: rep.ranks.e_a_b,
                e_az_b: rep.ranks.e_az_b,
                generic: rep.ranks.generic,
            },
            locus: LocusOut {
                generic_rank: rep.locus.generic_rank,
                generic_borderline: rep.locus.generic_borderline,
                points: rep.locus.drop_points.iter().map(|d| (d.lambda.re, d.lambda.im, d.rank)).collect(),
                borderline: rep.locus.borderline.iter().map(|z| [z.re, z.im]).collect(),
            },
            certificate: rep.certificate.as_ref().map(|c| CertificateOut {
                first: (&c.first).into(),
                second: c.second.as_ref().map(Into::into),
                value: [c.value.re, c.value.im],
            }),
        }
    }
}

#[derive(Serialize)]
pub struct ViolationOut {
    pub constraint: String,
    pub residual: f64,
}

#[derive(Serialize)]
pub struct InvalidOut {
    pub valid: bool,
    pub violations: Vec<ViolationOut>,
}

impl From<&ValidationReport> for InvalidOut {
    fn from(r: &ValidationReport) -> Self {
        InvalidOut {
            valid: false,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationOut { constraint: v.constraint.clone(), residual: v.residual })
                .collect(),
        }
    }
}
