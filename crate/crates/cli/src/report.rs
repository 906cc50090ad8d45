//! The key-value certification report written by `volcert verify`.
//!
//! ```text
//! format = volcert-report/1
//! constants.d_inf = 8.53276088104609e-1
//! ...
//! check.order = c1_truncation c2_truncation ...
//! check.c1_truncation.pass = true
//! check.c1_truncation.achieved = 3.21e-4
//! check.c1_truncation.tolerance = 5.00000000000000e-4
//! exit_status = 0
//! ```
//!
//! Every float is stored with 15 significant digits, and reports are
//! normalized to that precision when built or parsed, so `parse(emit(r)) == r`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use volcert::certificate::{
    BetaInterval, CaseAnalysisReport, CaseBound, CaseId, CaseInfimum, SliverCheck,
};
use volcert::packing::PaperConstants;
use volcert::{Error, Result};

pub const FORMAT: &str = "volcert-report/1";

/// Rounds to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.14e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

fn emit_f64(x: f64) -> String {
    format!("{x:.14e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// The measured quantity: an error, a margin or a value, depending on the check.
    pub achieved: f64,
    /// The limit `achieved` is compared against.
    pub tolerance: f64,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, achieved: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            pass,
            achieved: sig15(achieved),
            tolerance: sig15(tolerance),
        }
    }

    /// Passes when `achieved <= tolerance`.
    pub fn at_most(name: &str, achieved: f64, tolerance: f64) -> Self {
        Self::new(name, achieved <= tolerance, achieved, tolerance)
    }

    /// Passes when `achieved > tolerance`.
    pub fn above(name: &str, achieved: f64, tolerance: f64) -> Self {
        Self::new(name, achieved > tolerance, achieved, tolerance)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub constants: PaperConstants,
    pub case_report: CaseAnalysisReport,
    pub check_results: Vec<CheckResult>,
    pub exit_status: i32,
}

fn normalize_constants(c: &PaperConstants) -> PaperConstants {
    PaperConstants {
        d_inf: sig15(c.d_inf),
        c1: sig15(c.c1),
        c2: sig15(c.c2),
        k3_inf: sig15(c.k3_inf),
        v_ideal: sig15(c.v_ideal),
    }
}

fn normalize_case_report(r: &CaseAnalysisReport) -> CaseAnalysisReport {
    CaseAnalysisReport {
        constants: normalize_constants(&r.constants),
        per_case: r
            .per_case
            .iter()
            .map(|ci| CaseInfimum {
                bound: CaseBound {
                    case_id: ci.bound.case_id,
                    beta_interval: BetaInterval {
                        lo: sig15(ci.bound.beta_interval.lo),
                        hi: sig15(ci.bound.beta_interval.hi),
                        ..ci.bound.beta_interval
                    },
                    bound_value: sig15(ci.bound.bound_value),
                    formula_tag: ci.bound.formula_tag.clone(),
                },
                argmin_beta: sig15(ci.argmin_beta),
                at_excluded_endpoint: ci.at_excluded_endpoint,
            })
            .collect(),
        global_min: sig15(r.global_min),
        global_case: r.global_case,
        grid_step: sig15(r.grid_step),
        sliver: SliverCheck {
            lo: sig15(r.sliver.lo),
            hi: sig15(r.sliver.hi),
            min_iva: sig15(r.sliver.min_iva),
            min_ivb: sig15(r.sliver.min_ivb),
        },
    }
}

fn valid_check_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl CertificationReport {
    /// Builds a normalized report; the exit status is 0 iff every check passes.
    pub fn new(case_report: &CaseAnalysisReport, check_results: Vec<CheckResult>) -> Result<Self> {
        if let Some(bad) = check_results.iter().find(|c| !valid_check_name(&c.name)) {
            return Err(Error::InvalidArgument(format!("invalid check name {:?}", bad.name)));
        }
        let case_report = normalize_case_report(case_report);
        let exit_status = if check_results.iter().all(|c| c.pass) { 0 } else { 1 };
        Ok(Self {
            constants: case_report.constants,
            case_report,
            check_results,
            exit_status,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.check_results.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.check_results.iter().filter(|c| !c.pass)
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("format", FORMAT.to_string());
        let c = &self.constants;
        for (name, v) in [
            ("d_inf", c.d_inf),
            ("c1", c.c1),
            ("c2", c.c2),
            ("k3_inf", c.k3_inf),
            ("v_ideal", c.v_ideal),
        ] {
            kv(&format!("constants.{name}"), emit_f64(v));
        }
        let r = &self.case_report;
        kv("case.grid_step", emit_f64(r.grid_step));
        kv("case.global_min", emit_f64(r.global_min));
        kv("case.global_case", r.global_case.label().to_string());
        kv("case.sliver.lo", emit_f64(r.sliver.lo));
        kv("case.sliver.hi", emit_f64(r.sliver.hi));
        kv("case.sliver.min_iva", emit_f64(r.sliver.min_iva));
        kv("case.sliver.min_ivb", emit_f64(r.sliver.min_ivb));
        let order: Vec<&str> = r.per_case.iter().map(|ci| ci.case_id().label()).collect();
        kv("case.order", order.join(" "));
        for ci in &r.per_case {
            let p = format!("case.{}", ci.case_id().label());
            let iv = &ci.bound.beta_interval;
            kv(&format!("{p}.lo"), emit_f64(iv.lo));
            kv(&format!("{p}.hi"), emit_f64(iv.hi));
            kv(&format!("{p}.lo_closed"), iv.lo_closed.to_string());
            kv(&format!("{p}.hi_closed"), iv.hi_closed.to_string());
            kv(&format!("{p}.infimum"), emit_f64(ci.bound.bound_value));
            kv(&format!("{p}.argmin_beta"), emit_f64(ci.argmin_beta));
            kv(&format!("{p}.excluded_endpoint"), ci.at_excluded_endpoint.to_string());
            kv(&format!("{p}.formula"), ci.bound.formula_tag.clone());
        }
        let names: Vec<&str> = self.check_results.iter().map(|c| c.name.as_str()).collect();
        kv("check.order", names.join(" "));
        for check in &self.check_results {
            let p = format!("check.{}", check.name);
            kv(&format!("{p}.pass"), check.pass.to_string());
            kv(&format!("{p}.achieved"), emit_f64(check.achieved));
            kv(&format!("{p}.tolerance"), emit_f64(check.tolerance));
        }
        kv("exit_status", self.exit_status.to_string());
        out
    }
}

struct Fields {
    map: BTreeMap<String, (usize, String)>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Result<(usize, String)> {
        self.map.remove(key).ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("missing key {key}"),
        })
    }

    fn text(&mut self, key: &str) -> Result<String> {
        Ok(self.take(key)?.1)
    }

    fn float(&mut self, key: &str) -> Result<f64> {
        let (line, v) = self.take(key)?;
        match v.parse::<f64>() {
            Ok(x) if !x.is_nan() => Ok(sig15(x)),
            _ => Err(Error::Parse {
                line,
                message: format!("{key}: {v:?} is not a number"),
            }),
        }
    }

    fn flag(&mut self, key: &str) -> Result<bool> {
        let (line, v) = self.take(key)?;
        match v.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(Error::Parse {
                line,
                message: format!("{key}: {v:?} is not true or false"),
            }),
        }
    }

    fn case(&mut self, key: &str) -> Result<CaseId> {
        let (line, v) = self.take(key)?;
        v.parse().map_err(|_| Error::Parse {
            line,
            message: format!("{key}: unknown case {v:?}"),
        })
    }
}

pub fn parse_report(text: &str) -> Result<CertificationReport> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (k, v) = raw.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: "expected key = value".into(),
        })?;
        let key = k.trim().to_string();
        if map.insert(key.clone(), (line, v.trim().to_string())).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate key {key}"),
            });
        }
    }
    let mut f = Fields { map };
    let (line, format) = f.take("format")?;
    if format != FORMAT {
        return Err(Error::Parse {
            line,
            message: format!("unsupported format {format:?}"),
        });
    }
    let constants = PaperConstants {
        d_inf: f.float("constants.d_inf")?,
        c1: f.float("constants.c1")?,
        c2: f.float("constants.c2")?,
        k3_inf: f.float("constants.k3_inf")?,
        v_ideal: f.float("constants.v_ideal")?,
    };
    let grid_step = f.float("case.grid_step")?;
    let global_min = f.float("case.global_min")?;
    let global_case = f.case("case.global_case")?;
    let sliver = SliverCheck {
        lo: f.float("case.sliver.lo")?,
        hi: f.float("case.sliver.hi")?,
        min_iva: f.float("case.sliver.min_iva")?,
        min_ivb: f.float("case.sliver.min_ivb")?,
    };
    let (order_line, order) = f.take("case.order")?;
    let mut per_case: Vec<CaseInfimum> = Vec::new();
    for label in order.split_whitespace() {
        let case_id: CaseId = label.parse().map_err(|_| Error::Parse {
            line: order_line,
            message: format!("unknown case {label:?}"),
        })?;
        if per_case.iter().any(|ci| ci.case_id() == case_id) {
            return Err(Error::Parse {
                line: order_line,
                message: format!("case {label} listed twice"),
            });
        }
        let p = format!("case.{label}");
        let beta_interval = BetaInterval {
            lo: f.float(&format!("{p}.lo"))?,
            hi: f.float(&format!("{p}.hi"))?,
            lo_closed: f.flag(&format!("{p}.lo_closed"))?,
            hi_closed: f.flag(&format!("{p}.hi_closed"))?,
        };
        let bound_value = f.float(&format!("{p}.infimum"))?;
        let argmin_beta = f.float(&format!("{p}.argmin_beta"))?;
        let at_excluded_endpoint = f.flag(&format!("{p}.excluded_endpoint"))?;
        let formula_tag = f.text(&format!("{p}.formula"))?;
        per_case.push(CaseInfimum {
            bound: CaseBound {
                case_id,
                beta_interval,
                bound_value,
                formula_tag,
            },
            argmin_beta,
            at_excluded_endpoint,
        });
    }
    let (check_line, check_order) = f.take("check.order")?;
    let mut check_results: Vec<CheckResult> = Vec::new();
    for name in check_order.split_whitespace() {
        if !valid_check_name(name) || check_results.iter().any(|c| c.name == name) {
            return Err(Error::Parse {
                line: check_line,
                message: format!("bad or repeated check name {name:?}"),
            });
        }
        let p = format!("check.{name}");
        check_results.push(CheckResult {
            name: name.to_string(),
            pass: f.flag(&format!("{p}.pass"))?,
            achieved: f.float(&format!("{p}.achieved"))?,
            tolerance: f.float(&format!("{p}.tolerance"))?,
        });
    }
    let (status_line, status) = f.take("exit_status")?;
    let exit_status: i32 = status.parse().map_err(|_| Error::Parse {
        line: status_line,
        message: format!("exit_status {status:?} is not an integer"),
    })?;
    let expected_status = if check_results.iter().all(|c| c.pass) { 0 } else { 1 };
    if exit_status != expected_status {
        return Err(Error::Parse {
            line: status_line,
            message: format!("exit_status {exit_status} contradicts the check results"),
        });
    }
    if let Some((key, (line, _))) = f.map.into_iter().next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected key {key}"),
        });
    }
    let case_report = CaseAnalysisReport {
        constants,
        per_case,
        global_min,
        global_case,
        grid_step,
        sliver,
    };
    Ok(CertificationReport {
        constants,
        case_report,
        check_results,
        exit_status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use volcert::certificate::{global_minimum, CaseThresholds};

    fn sample_constants() -> PaperConstants {
        PaperConstants {
            d_inf: 0.8532760881046085,
            c1: 1.9318516525781366,
            c2: 0.9297813075926344,
            k3_inf: 0.5 * 1.5f64.ln(),
            v_ideal: 1.0149416064096536,
        }
    }

    fn sample() -> CertificationReport {
        let case = global_minimum(&sample_constants(), 1e-3).unwrap();
        let checks = vec![
            CheckResult::at_most("first", 1.0 / 3.0, 0.5),
            CheckResult::above("second", 2.0, 7.0),
        ];
        CertificationReport::new(&case, checks).unwrap()
    }

    #[test]
    fn sig15_is_idempotent() {
        for x in [1.0 / 3.0, std::f64::consts::PI, 1e-300, -2.5e17, 0.0] {
            let y = sig15(x);
            assert_eq!(sig15(y), y);
            assert!((x - y).abs() <= 1e-14 * x.abs());
        }
        assert_eq!(sig15(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn roundtrip() {
        let r = sample();
        assert_eq!(r.exit_status, 1);
        let text = r.emit();
        let back = parse_report(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.emit(), text);
    }

    #[test]
    fn infinite_interval_end_survives() {
        let r = sample();
        let cusp = r.case_report.case(CaseId::CuspLarge).unwrap();
        assert_eq!(cusp.bound.beta_interval.hi, f64::INFINITY);
        let t = CaseThresholds::new(&r.constants);
        assert_eq!(r.case_report.case(CaseId::I).unwrap().bound.beta_interval.lo, sig15(t.i));
    }

    #[test]
    fn rejects_tampering() {
        let text = sample().emit();
        let cases = [
            text.replace("format = volcert-report/1", "format = other"),
            text.replace("exit_status = 1", "exit_status = 0"),
            text.replace("check.first.pass = true", "check.first.pass = yes"),
            text.replace("case.order = CUSP_LARGE", "case.order = CUSP_LARGE CUSP_LARGE"),
            format!("{text}extra = 1\n"),
            format!("{text}exit_status = 1\n"),
            text.replace("case.global_case = ", "case.global_case = V"),
            text.lines().filter(|l| !l.starts_with("constants.c2")).collect::<Vec<_>>().join("\n"),
            text.replacen("constants.c1 = ", "constants.c1 = NaN", 1),
            text.replacen("constants.c1 = ", "constants.c1 ", 1),
        ];
        for (i, bad) in cases.iter().enumerate() {
            assert!(parse_report(bad).is_err(), "case {i}");
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = sample().emit();
        let padded = format!("# header\n\n{}", text.replace('\n', "\n\n"));
        assert_eq!(parse_report(&padded).unwrap(), sample());
    }

    #[test]
    fn rejects_bad_check_names() {
        let case = global_minimum(&sample_constants(), 1e-3).unwrap();
        assert!(CertificationReport::new(&case, vec![CheckResult::at_most("a b", 0.0, 1.0)]).is_err());
    }
}
