//! Batch verification: expands a [`SuiteSpec`] into independent cases, runs
//! them in parallel and collects a [`VerificationReport`].

use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::charlier::{self, charlier};
use crate::diffeq::{self, forward_substitution, CoeffTable, ForwardSolution};
use crate::generalized;
use crate::poly::{int, rat, Rational};
use crate::verdict::{Failure, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Classical,
    Generalized,
    Diffeq,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Classical => "classical",
            Suite::Generalized => "generalized",
            Suite::Diffeq => "diffeq",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown suite `{}` (expected classical, generalized, diffeq or all)",
            self.0
        )
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Suite::Classical),
            "generalized" => Ok(Suite::Generalized),
            "diffeq" => Ok(Suite::Diffeq),
            "all" => Ok(Suite::All),
            other => Err(UnknownSuite(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub n_max: u32,
    pub i_max: u32,
}

impl Default for SuiteSpec {
    fn default() -> Self {
        SuiteSpec {
            suite: Suite::All,
            n_max: 12,
            i_max: 12,
        }
    }
}

impl SuiteSpec {
    /// Largest coefficient index any case of this spec touches.
    pub fn table_size(&self) -> u32 {
        self.n_max.max(self.i_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub identity: String,
    pub indices: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    pub status: Status,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub suite: Suite,
    pub n_max: u32,
    pub i_max: u32,
    pub summary: Summary,
    pub cases: Vec<CaseRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Copy with every timing field zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> VerificationReport {
        let mut out = self.clone();
        for case in &mut out.cases {
            case.elapsed_ms = 0.0;
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }
}

type Check<'a> = Box<dyn Fn() -> Verdict + Send + Sync + 'a>;

struct Case<'a> {
    identity: &'static str,
    indices: Vec<i64>,
    param: Option<String>,
    check: Check<'a>,
}

fn case<'a>(
    identity: &'static str,
    indices: &[u32],
    check: impl Fn() -> Verdict + Send + Sync + 'a,
) -> Case<'a> {
    Case {
        identity,
        indices: indices.iter().map(|&i| i as i64).collect(),
        param: None,
        check: Box::new(check),
    }
}

fn classical_cases<'a>(spec: &SuiteSpec) -> Vec<Case<'a>> {
    let n_max = spec.n_max;
    let mut cases = Vec::new();
    for n in 0..=n_max {
        cases.push(case("lowering", &[n], move || charlier::verify_lowering(n)));
        cases.push(case("nabla_lowering", &[n], move || {
            charlier::verify_nabla_lowering(n)
        }));
        cases.push(case("second_order", &[n], move || {
            charlier::verify_second_order(n)
        }));
        cases.push(case("laguerre", &[n], move || {
            charlier::verify_laguerre_relation(n)
        }));
        cases.push(case("special_values", &[n], move || {
            charlier::verify_special_values(n)
        }));
        cases.push(case("moment", &[n], move || {
            charlier::verify_moment(n as usize)
        }));
        if n >= 1 {
            cases.push(case("value_difference", &[n], move || {
                charlier::verify_value_difference(n)
            }));
            cases.push(case("inverse_matrix", &[n], move || {
                charlier::verify_inverse_matrix(n as usize)
            }));
        }
        let params: [Rational; 3] = [int(-1), int(n as i64), rat(1, 2)];
        for p in params {
            let label = p.to_string();
            let mut c = case("shift", &[n], move || {
                charlier::verify_shift_identity(n, &p)
            });
            c.param = Some(label);
            cases.push(c);
        }
        for j in 0..=n {
            cases.push(case("cru", &[n, j], move || {
                charlier::verify_convolution(n, j)
            }));
        }
        for m in 0..=n_max {
            cases.push(case("orthogonality_classical", &[m, n], move || {
                charlier::verify_classical_orthogonality(m, n)
            }));
        }
    }
    cases
}

fn generalized_cases<'a>(spec: &SuiteSpec) -> Vec<Case<'a>> {
    let mut cases = Vec::new();
    for n in 0..=spec.n_max {
        cases.push(case("gen_structure", &[n], move || {
            generalized::verify_structure(n)
        }));
        cases.push(case("alternative_form", &[n], move || {
            generalized::verify_alternative_form(n)
        }));
        cases.push(case("construction", &[n], move || {
            generalized::verify_construction_steps(n)
        }));
        cases.push(case("norm", &[n], move || generalized::verify_norm(n)));
        for m in 0..n {
            cases.push(case("orthogonality_general", &[m, n], move || {
                generalized::verify_orthogonality(m, n)
            }));
        }
    }
    cases
}

fn diffeq_cases<'a>(
    spec: &SuiteSpec,
    table: &'a CoeffTable,
    solution: &'a Result<ForwardSolution, Failure>,
) -> Vec<Case<'a>> {
    let mut cases = Vec::new();
    for n in 0..=spec.n_max {
        cases.push(case("DV", &[n], move || {
            diffeq::verify_difference_equation(table, n)
        }));
        cases.push(case("form0", &[n], move || diffeq::verify_form0(table, n)));
        cases.push(case("form1", &[n], move || diffeq::verify_form1(table, n)));
        cases.push(case("form2", &[n], move || diffeq::verify_form2(table, n)));
        cases.push(case("combined", &[n], move || {
            diffeq::verify_combined_equation(table, n)
        }));
        cases.push(case("classical_series", &[n], move || {
            diffeq::verify_classical_infinite_order(n)
        }));
        cases.push(case("expansion", &[n], move || {
            diffeq::verify_expansion_identity(&charlier(n as i64))
        }));
        if n >= 1 {
            cases.push(case("reduction_lemma", &[n], move || {
                diffeq::verify_reduction_lemma(n)
            }));
        }
        for i in 0..=n.min(spec.i_max) {
            for k in 0..=i {
                cases.push(case("mixed_leading", &[i, k, n], move || {
                    diffeq::verify_mixed_leading(i, k, n)
                }));
            }
        }
    }
    for i in 1..=spec.i_max {
        cases.push(case("A_structure", &[i], move || {
            diffeq::verify_coefficient_structure(table, i)
        }));
        cases.push(case("h_closed_form", &[i], move || {
            diffeq::verify_leading_coefficient(table, i)
        }));
        cases.push(case("uniqueness", &[i], move || match solution {
            Ok(sol) => diffeq::verify_uniqueness(table, sol, i),
            Err(e) => Err(e.clone()),
        }));
        if i < spec.i_max {
            cases.push(case("degree_escalation", &[i], move || {
                diffeq::verify_degree_escalation(table, i)
            }));
            cases.push(case("h_coprime", &[i], move || {
                diffeq::verify_leading_coprime(table, i)
            }));
        }
    }
    cases
}

fn run_case(c: Case<'_>) -> CaseRecord {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| (c.check)())).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".to_string());
        Err(Failure::new(format!("internal error: {msg}")))
    });
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, detail, residual) = match outcome {
        Ok(()) => (Status::Pass, None, None),
        Err(f) => (
            Status::Fail,
            Some(f.detail),
            f.residual.map(|r| r.to_string()),
        ),
    };
    CaseRecord {
        identity: c.identity.to_string(),
        indices: c.indices,
        param: c.param,
        status,
        elapsed_ms,
        detail,
        residual,
    }
}

/// Runs `spec` against freshly computed coefficients.
pub fn run(spec: &SuiteSpec) -> VerificationReport {
    let table = CoeffTable::build(spec.table_size());
    run_with_table(spec, &table)
}

/// Runs `spec` against the given coefficient table, which must cover
/// indices up to [`SuiteSpec::table_size`].
pub fn run_with_table(spec: &SuiteSpec, table: &CoeffTable) -> VerificationReport {
    assert!(
        table.max_index() >= spec.table_size(),
        "coefficient table too small for the requested bounds"
    );
    let solution = forward_substitution(spec.i_max);
    let mut cases = Vec::new();
    if spec.suite.includes(Suite::Classical) {
        cases.extend(classical_cases(spec));
    }
    if spec.suite.includes(Suite::Generalized) {
        cases.extend(generalized_cases(spec));
    }
    if spec.suite.includes(Suite::Diffeq) {
        cases.extend(diffeq_cases(spec, table, &solution));
    }
    let mut records: Vec<CaseRecord> = cases.into_par_iter().map(run_case).collect();
    records.sort_by(|l, r| {
        (&l.identity, &l.indices, &l.param).cmp(&(&r.identity, &r.indices, &r.param))
    });
    let passed = records.iter().filter(|c| c.status == Status::Pass).count();
    VerificationReport {
        tool: "charlier".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        suite: spec.suite,
        n_max: spec.n_max,
        i_max: spec.i_max,
        summary: Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        },
        cases: records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Classical,
            Suite::Generalized,
            Suite::Diffeq,
            Suite::All,
        ] {
            assert_eq!(s.to_string().parse::<Suite>(), Ok(s));
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_classical_run_passes() {
        let spec = SuiteSpec {
            suite: Suite::Classical,
            n_max: 3,
            i_max: 1,
        };
        let report = run(&spec);
        assert!(report.all_passed());
        assert_eq!(report.summary.total, report.cases.len());
        assert!(report.cases.iter().all(|c| c.identity != "DV"));
    }

    #[test]
    fn degenerate_diffeq_run() {
        let spec = SuiteSpec {
            suite: Suite::Diffeq,
            n_max: 0,
            i_max: 1,
        };
        let report = run(&spec);
        assert!(
            report.all_passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert!(report
            .cases
            .iter()
            .any(|c| c.identity == "DV" && c.indices == vec![0]));
    }

    #[test]
    fn corrupted_coefficient_reports_residual() {
        let spec = SuiteSpec {
            suite: Suite::Diffeq,
            n_max: 2,
            i_max: 2,
        };
        let table = CoeffTable::build(2).with_ai(1, Poly::x());
        let report = run_with_table(&spec, &table);
        assert!(!report.all_passed());
        let dv1 = report
            .cases
            .iter()
            .find(|c| c.identity == "DV" && c.indices == vec![1])
            .unwrap();
        assert_eq!(dv1.status, Status::Fail);
        assert!(dv1.residual.is_some());
    }

    #[test]
    fn cases_are_sorted_and_unique() {
        let report = run(&SuiteSpec {
            suite: Suite::All,
            n_max: 3,
            i_max: 3,
        });
        let keys: Vec<_> = report
            .cases
            .iter()
            .map(|c| (c.identity.clone(), c.indices.clone(), c.param.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }
}
