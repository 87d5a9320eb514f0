//! Whole-catalog verification and report rendering.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::cgroup::{build_c_group, build_rc, galois_descent_check, CGroupDatum, DescentReport};
use crate::error::Result;
use crate::highest_weight::weyl_dimension;
use crate::parameters::{run_corollary_trials, TrialSummary};
use crate::root_datum::InvariantCheck;
use crate::shimura::{verify_lemma1, LemmaReport, ShimuraData};
use crate::Rational;

pub const TOOL: &str = "cgroupkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CGroupSummary {
    pub char_basis: Vec<Vec<i64>>,
    pub cochar_basis: Vec<Vec<String>>,
    pub char_index: u64,
    pub cochar_index: u64,
    pub kernel_order: u64,
    pub kernel_generator: Vec<String>,
    pub e_trivial: bool,
}

impl CGroupSummary {
    pub fn new(c: &CGroupDatum<Rational>) -> Self {
        Self {
            char_basis: c.char_basis(),
            cochar_basis: c
                .cochar_lattice
                .basis()
                .rows()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            char_index: c.kernel.char_index,
            cochar_index: c.kernel.cochar_index,
            kernel_order: c.kernel.order,
            kernel_generator: c.kernel.generator.iter().map(ToString::to_string).collect(),
            e_trivial: c.kernel.e_trivial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisSummary {
    #[serde(flatten)]
    pub descent: DescentReport,
    /// Per automorphism: whether it maps the weights of `V_μ` to themselves.
    /// Informational; false when `μ` is not defined over the base field.
    pub v_mu_stable: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub source: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub validation: Vec<InvariantCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_dimension: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension_passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cgroup: Option<CGroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisSummary>,
    /// Every weight of `r_C` lies in the quotient character lattice.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rc_in_quotient_lattice: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<TrialSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl EntryReport {
    fn empty(name: String, source: String) -> Self {
        Self {
            name,
            source,
            passed: false,
            error: None,
            validation: Vec::new(),
            rank: None,
            weyl_group_order: None,
            lemma: None,
            weyl_dimension: None,
            dimension_passed: None,
            cgroup: None,
            galois: None,
            rc_in_quotient_lattice: None,
            corollary: None,
            elapsed_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub passed: bool,
    pub entries: Vec<EntryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn fill_entry(e: &mut EntryReport, s: &ShimuraData, seed: u64, trials: u64) -> Result<()> {
    let datum = &s.datum;
    e.validation = datum.validate().checks;
    e.rank = Some(datum.rank);
    e.weyl_group_order = Some(datum.weyl_group_order(crate::root_datum::DEFAULT_WEYL_BOUND)?);

    let lemma = verify_lemma1(s)?;
    let dual = s.dual_datum()?;
    let highest = dual.dominant_conjugate(&s.mu.dualize())?;
    let wd = weyl_dimension(&dual, &highest)?;
    e.dimension_passed = Some(wd == lemma.dim_v_mu);
    e.weyl_dimension = Some(wd);
    e.lemma = Some(lemma);

    let c = build_c_group::<Rational>(s)?;
    e.cgroup = Some(CGroupSummary::new(&c));

    let rl = s.v_mu()?;
    let descent = galois_descent_check(&c, &dual.automorphisms);
    let v_mu_stable = dual
        .automorphisms
        .iter()
        .map(|a| rl.transform(a) == rl)
        .collect();
    e.galois = Some(GaloisSummary {
        descent,
        v_mu_stable,
    });

    let rc = build_rc(&c, &rl);
    e.rc_in_quotient_lattice = Some(rc.is_ok());
    let rc = rc?;
    e.corollary = Some(run_corollary_trials(s, &c, &rl, &rc, seed, trials, false)?);
    Ok(())
}

fn verify_entry(entry: &CatalogEntry, seed: u64, trials: u64, timing: bool) -> EntryReport {
    let start = Instant::now();
    let stem = entry
        .source
        .strip_suffix(".datum")
        .unwrap_or(&entry.source)
        .to_string();
    let mut e = match &entry.data {
        Ok(s) => EntryReport::empty(s.datum.name.clone(), entry.source.clone()),
        Err(err) => {
            let mut e = EntryReport::empty(stem, entry.source.clone());
            e.error = Some(err.to_string());
            return e;
        }
    };
    let s = entry.data.as_ref().expect("checked above");
    if let Err(err) = fill_entry(&mut e, s, seed, trials) {
        e.error = Some(err.to_string());
    }
    e.passed = e.error.is_none()
        && e.validation.iter().all(|c| c.passed)
        && e.lemma.as_ref().is_some_and(|l| l.passed)
        && e.dimension_passed == Some(true)
        && e.cgroup
            .as_ref()
            .is_some_and(|c| c.char_index == 2 && c.cochar_index == 2 && c.kernel_order == 2)
        && e.galois.as_ref().is_some_and(|g| g.descent.passed)
        && e.rc_in_quotient_lattice == Some(true)
        && e.corollary.as_ref().is_some_and(TrialSummary::passed);
    if timing {
        e.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    e
}

/// Verifies every entry independently; a failing entry never stops the
/// others. Entries are sorted by name.
pub fn run_full_verification(entries: &[CatalogEntry], seed: u64, trials: u64) -> Report {
    run_full_verification_with(entries, seed, trials, false)
}

/// As [`run_full_verification`], recording wall-clock times when `timing`
/// is set. Timed reports are not reproducible byte for byte.
pub fn run_full_verification_with(
    entries: &[CatalogEntry],
    seed: u64,
    trials: u64,
    timing: bool,
) -> Report {
    let start = Instant::now();
    let mut reports: Vec<EntryReport> = entries
        .par_iter()
        .map(|entry| verify_entry(entry, seed, trials, timing))
        .collect();
    reports.sort_by(|a, b| (&a.name, &a.source).cmp(&(&b.name, &b.source)));
    Report {
        tool: TOOL,
        version: VERSION,
        seed,
        trials,
        passed: reports.iter().all(|e| e.passed),
        entries: reports,
        elapsed_ms: timing.then(|| start.elapsed().as_millis() as u64),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{TOOL} {VERSION}  seed={} trials={}",
            self.seed, self.trials
        );
        for e in &self.entries {
            let status = if e.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {:<14}", e.name);
            if let Some(l) = &e.lemma {
                let _ = write!(
                    out,
                    " d={} <chi,mu>={} scalar={:+} dim={}",
                    l.d, l.pairing, l.scalar, l.dim_v_mu
                );
                if l.degenerate {
                    out.push_str(" (degenerate)");
                }
            }
            if let Some(c) = &e.cgroup {
                let _ = write!(
                    out,
                    " index={}/{} kernel={}",
                    c.char_index, c.cochar_index, c.kernel_order
                );
            }
            if let Some(g) = &e.galois {
                if !g.descent.checks.is_empty() {
                    let _ = write!(
                        out,
                        " galois={}",
                        if g.descent.passed { "ok" } else { "FAIL" }
                    );
                }
            }
            if let Some(t) = &e.corollary {
                let _ = write!(out, " trials={}/{}", t.trials - t.failures, t.trials);
            }
            if let Some(err) = &e.error {
                let _ = write!(out, " error: {err}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all entries pass"
            } else {
                "verification FAILED"
            }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn empty_report_passes() {
        let r = run_full_verification(&[], 0, 10);
        assert!(r.passed && r.entries.is_empty());
    }

    #[test]
    fn builtin_catalog_passes() {
        let r = run_full_verification(&builtin_catalog(), 0, 20);
        for e in &r.entries {
            assert!(e.passed, "{}", serde_json::to_string_pretty(e).unwrap());
        }
        assert!(r.passed);
    }

    #[test]
    fn bad_entry_is_isolated() {
        let mut entries = builtin_catalog();
        entries.push(CatalogEntry::from_text(
            "bad.datum",
            r#"{"name":"bad","rank":2,"roots":[[1,-1],[-1,1]],"coroots":[[1,-1],[-1,1]],"simple":[0],"mu":[0,-2]}"#,
        ));
        let r = run_full_verification(&entries, 0, 5);
        assert!(!r.passed);
        let bad: Vec<_> = r
            .entries
            .iter()
            .filter(|e| !e.passed)
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(bad, vec!["bad"]);
    }
}
