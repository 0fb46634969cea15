//! Report payloads emitted on standard output. Field order is fixed by the
//! struct declarations, so repeated runs are byte-identical.

use std::collections::BTreeMap;

use serde::Serialize;

use secgraph_core::descent::DescentVerdict;
use secgraph_core::graph::Component;

#[derive(Serialize)]
pub struct ValidateReport {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Serialize)]
pub struct ComponentsReport {
    pub components: Vec<Component>,
}

#[derive(Serialize)]
pub struct HomologyReport {
    pub b0_reduced: usize,
    pub b1: usize,
}

#[derive(Serialize)]
pub struct CoverBuildReport {
    pub degree: usize,
    pub vertices: usize,
    pub edges: usize,
    pub b1: usize,
    pub covering: bool,
}

#[derive(Serialize)]
pub struct TransferReport {
    pub rank: usize,
    pub elementary_divisors: Vec<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_mod: Option<usize>,
}

#[derive(Serialize)]
pub struct ClassReport {
    pub component: usize,
    pub fixed_vertex: usize,
    pub alphas: BTreeMap<usize, String>,
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub classes: Vec<ClassReport>,
}

#[derive(Serialize)]
pub struct SectionCheckReport {
    pub is_section: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Serialize)]
pub struct ConjugateReport {
    pub conjugate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct BruteSectionReport {
    pub alphas: BTreeMap<usize, String>,
}

#[derive(Serialize)]
pub struct BruteReport {
    pub count: usize,
    pub sections: Vec<BruteSectionReport>,
}

#[derive(Serialize)]
pub struct DescentCheckReport {
    pub adelic: bool,
    pub fin_descent: bool,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct DescentWitnessReport {
    pub adelic: bool,
    pub fin_descent: bool,
    #[serde(flatten)]
    pub verdict: DescentVerdict,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub error: String,
}
