//! Re-running known classifications and examples against the engine.

use std::io::{self, Write};
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wlplab::catalog::{self, ExpectedFailure, FamilyKind};
use wlplab::{
    closed_form, indpoly_enum, mode_formula, parse_spec, unimodality_report, Characteristic,
    ClosedForm, ModeFamily, WlpVerdict,
};

use crate::{Engine, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "table1")]
    Table1,
    ThmPaths,
    ThmCycles,
    ThmCe,
    ThmPan,
    CorTadpole,
    PropPathInj,
    LemmaModes,
    ExEnCharp,
    ExBkNonunimodal,
    PropCompleteUnions,
}

impl Target {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub target: String,
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    pub seconds: f64,
}

impl ReproductionReport {
    fn new(target: Target, cases: Vec<CaseResult>, seconds: f64) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        Self {
            target: target.name(),
            cases,
            passed,
            failed,
            pass: failed == 0,
            seconds,
        }
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(self)?),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["target", "case", "expected", "computed", "pass", "seconds"])?;
                for c in &self.cases {
                    w.write_record([
                        self.target.as_str(),
                        &c.case,
                        &c.expected,
                        &c.computed,
                        &c.pass.to_string(),
                        &format!("{:.3}", c.seconds),
                    ])?;
                }
                out.write_all(&w.into_inner().map_err(|e| e.into_error())?)
            }
            Format::Table => {
                writeln!(out, "reproduce {}", self.target)?;
                for c in &self.cases {
                    writeln!(
                        out,
                        "  {} {:<28} expected: {:<40} computed: {} [{:.2}s]",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.case,
                        c.expected,
                        c.computed,
                        c.seconds
                    )?;
                }
                writeln!(
                    out,
                    "{}: {}/{} cases passed in {:.2}s",
                    self.target,
                    self.passed,
                    self.cases.len(),
                    self.seconds
                )
            }
        }
    }
}

/// A case to run: name, expected description, and a check producing the
/// computed description and whether it matches.
type Check<'a> = Box<dyn Fn() -> wlplab::Result<(String, bool)> + Send + Sync + 'a>;

struct Case<'a> {
    name: String,
    expected: String,
    check: Check<'a>,
}

fn case<'a>(
    name: impl Into<String>,
    expected: impl Into<String>,
    check: impl Fn() -> wlplab::Result<(String, bool)> + Send + Sync + 'a,
) -> Case<'a> {
    Case {
        name: name.into(),
        expected: expected.into(),
        check: Box::new(check),
    }
}

fn run_cases(cases: Vec<Case<'_>>) -> Vec<CaseResult> {
    cases
        .into_par_iter()
        .map(|c| {
            let start = Instant::now();
            let (computed, pass) = match (c.check)() {
                Ok(result) => result,
                Err(e) => (format!("error: {e}"), false),
            };
            CaseResult {
                case: c.name,
                expected: c.expected,
                computed,
                pass,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

pub fn reproduce(
    target: Target,
    max_n: Option<usize>,
    engine: &Engine,
) -> wlplab::Result<ReproductionReport> {
    let start = Instant::now();
    let cases = match target {
        Target::Table1 => table1_cases(),
        Target::ThmPaths => family_cases(FamilyKind::Path, max_n.unwrap_or(17), engine),
        Target::ThmCycles => family_cases(FamilyKind::Cycle, max_n.unwrap_or(17), engine),
        Target::ThmCe => family_cases(FamilyKind::Ce, max_n.unwrap_or(16), engine),
        Target::ThmPan => family_cases(FamilyKind::Pan, max_n.unwrap_or(16), engine),
        Target::CorTadpole => family_cases(FamilyKind::Tadpole3, max_n.unwrap_or(14), engine),
        Target::PropPathInj => path_injectivity_cases(max_n.unwrap_or(20), engine)?,
        Target::LemmaModes => lemma_cases(max_n.unwrap_or(500)),
        Target::ExEnCharp => empty_graph_cases(max_n.unwrap_or(10), engine),
        Target::ExBkNonunimodal => bk_cases(),
        Target::PropCompleteUnions => complete_union_cases(engine),
    };
    let results = run_cases(cases);
    Ok(ReproductionReport::new(
        target,
        results,
        start.elapsed().as_secs_f64(),
    ))
}

fn table1_cases() -> Vec<Case<'static>> {
    let mut cases = Vec::new();
    for row in catalog::mode_table() {
        for (i, cell) in row.values.iter().enumerate() {
            let n = i + 1;
            let kind = row.kind;
            let expected = cell.map_or("-".to_string(), |v| v.to_string());
            let cell = *cell;
            cases.push(case(format!("{} n={n}", row.symbol), expected, move || {
                let form = match kind {
                    FamilyKind::Path => ClosedForm::Path(n),
                    FamilyKind::Cycle => ClosedForm::Cycle(n),
                    FamilyKind::Ce => ClosedForm::Ce(n),
                    _ => ClosedForm::Pan(n),
                };
                let Ok(p) = closed_form(form) else {
                    return Ok(("-".into(), cell.is_none()));
                };
                let mode = unimodality_report(&p).mode;
                let formula = match kind {
                    FamilyKind::Path => Some(mode_formula(ModeFamily::Path, n)?),
                    FamilyKind::Cycle => Some(mode_formula(ModeFamily::Cycle, n)?),
                    _ => None,
                };
                let computed = mode.map_or("not unimodal".into(), |m| m.to_string());
                let pass = mode == cell && formula.is_none_or(|f| Some(f) == cell);
                Ok((computed, pass))
            }));
        }
    }
    cases
}

fn describe(v: &WlpVerdict) -> String {
    if v.has_wlp {
        return "WLP".into();
    }
    let parts: Vec<String> = v
        .records
        .iter()
        .filter(|r| !r.has_max_rank())
        .map(|r| {
            let mut senses = Vec::new();
            if r.injective_fail {
                senses.push("injective");
            }
            if r.surjective_fail {
                senses.push("surjective");
            }
            let certified = if r.certified { "" } else { ", uncertified" };
            format!("k={} fails {}{certified}", r.k, senses.join("+"))
        })
        .collect();
    format!("no WLP; {}", parts.join(", "))
}

fn describe_failures(failures: &[ExpectedFailure]) -> String {
    failures
        .iter()
        .map(|f| format!("{} at k={}", f.sense, f.degree))
        .collect::<Vec<_>>()
        .join(", ")
}

fn family_cases(kind: FamilyKind, upper: usize, engine: &Engine) -> Vec<Case<'_>> {
    let (_, listed_max) = kind.listed_range();
    (kind.min_n()..=upper)
        .map(|n| {
            let spec = kind.family_spec(n).expect("n >= min_n").to_string();
            let name = spec.clone();
            if n <= listed_max {
                let entry = catalog::classification(kind, n);
                let expected = match &entry {
                    Ok(e) if e.expected_wlp => "WLP".to_string(),
                    Ok(e) => format!("no WLP; {}", describe_failures(&e.expected_failures)),
                    Err(err) => format!("error: {err}"),
                };
                let entry = entry.ok();
                case(name, expected, move || {
                    let Some(entry) = &entry else {
                        return Ok(("not tabulated".into(), false));
                    };
                    let v = engine.verdict(&spec)?;
                    Ok((describe(&v), entry.compare(&v).is_ok() && v.certified()))
                })
            } else {
                let claim = catalog::asymptotic_surjectivity_claim(kind, n).ok();
                let expected = match claim {
                    Some(c) => format!("no WLP; {} at k={}", c.sense, c.degree),
                    None => "no WLP".to_string(),
                };
                case(name, expected, move || {
                    let v = engine.verdict(&spec)?;
                    let claimed = claim
                        .is_none_or(|c| v.records.get(c.degree).is_some_and(|r| r.fails(c.sense)));
                    Ok((describe(&v), !v.has_wlp && claimed))
                })
            }
        })
        .collect()
}

fn path_injectivity_cases(upper: usize, engine: &Engine) -> wlplab::Result<Vec<Case<'_>>> {
    let mut cases = Vec::new();
    for n in 12..=upper {
        let Some(claim) = catalog::path_injectivity_claim(n)? else {
            continue;
        };
        let spec = format!("path:{n}");
        cases.push(case(
            spec.clone(),
            format!("injective fails at k={}", claim.degree),
            move || {
                let v = engine.verdict(&spec)?;
                let r = &v.records[claim.degree];
                let computed = format!(
                    "rank {} with h = ({}, {}){}",
                    r.rank,
                    r.h_k,
                    r.h_k1,
                    if r.certified { "" } else { ", uncertified" }
                );
                Ok((computed, r.injective_fail && r.certified))
            },
        ));
    }
    Ok(cases)
}

#[allow(clippy::int_plus_one)] // written as the inequalities read
fn lemma_cases(upper: usize) -> Vec<Case<'static>> {
    type Lemma = (&'static str, usize, fn(usize) -> wlplab::Result<bool>);
    fn lambda(n: usize) -> wlplab::Result<usize> {
        mode_formula(ModeFamily::Path, n)
    }
    fn rho(n: usize) -> wlplab::Result<usize> {
        mode_formula(ModeFamily::Cycle, n)
    }
    fn mode(form: ClosedForm) -> wlplab::Result<usize> {
        unimodality_report(&closed_form(form)?)
            .mode
            .ok_or_else(|| wlplab::Error::Inconsistent(format!("{form:?} not unimodal")))
    }
    let lemmas: [Lemma; 6] = [
        ("lambda_(n+1) >= lambda_n", 1, |n| {
            Ok(lambda(n + 1)? >= lambda(n)?)
        }),
        ("lambda_(n+3)-1 <= lambda_n <= lambda_(n+4)-1", 1, |n| {
            Ok(lambda(n + 3)? - 1 <= lambda(n)? && lambda(n)? <= lambda(n + 4)? - 1)
        }),
        ("lambda_(n+11) >= lambda_n + 3", 1, |n| {
            Ok(lambda(n + 11)? >= lambda(n)? + 3)
        }),
        (
            "lambda_(n-1) <= rho_n <= lambda_(n-4)+1 <= lambda_n",
            5,
            |n| {
                let r = rho(n)?;
                Ok(lambda(n - 1)? <= r
                    && r <= lambda(n - 4)? + 1
                    && lambda(n - 4)? + 1 <= lambda(n)?)
            },
        ),
        ("lambda_(n-1) <= chi_n <= lambda_(n-4)+1", 5, |n| {
            let c = mode(ClosedForm::Ce(n))?;
            Ok(lambda(n - 1)? <= c && c <= lambda(n - 4)? + 1)
        }),
        (
            "chi_(n+1) <= zeta_n <= rho_n+1 <= lambda_n+1 <= chi_(n+1)+1",
            5,
            |n| {
                let (c1, z) = (mode(ClosedForm::Ce(n + 1))?, mode(ClosedForm::Pan(n))?);
                let (r, l) = (rho(n)?, lambda(n)?);
                Ok(c1 <= z && z <= r + 1 && r <= l && l <= c1)
            },
        ),
    ];
    lemmas
        .into_iter()
        .map(|(name, from, holds)| {
            case(
                name,
                format!("holds for {from} <= n <= {upper}"),
                move || {
                    for n in from..=upper {
                        if !holds(n)? {
                            return Ok((format!("fails at n = {n}"), false));
                        }
                    }
                    Ok((format!("holds for {from} <= n <= {upper}"), true))
                },
            )
        })
        .collect()
}

fn empty_graph_cases(upper: usize, engine: &Engine) -> Vec<Case<'_>> {
    let mut cases = Vec::new();
    let mut push = |n: usize, p: u64, expected: bool| {
        cases.push(case(
            format!("empty:{n} char {p}"),
            if expected { "WLP" } else { "no WLP" },
            move || {
                let v = engine.verdict_in(&format!("empty:{n}"), Characteristic::Prime(p))?;
                Ok((describe(&v), v.has_wlp == expected))
            },
        ));
    };
    for p in [3u64, 5, 7, 11, 13] {
        for n in 5..=upper {
            push(n, p, p as usize >= (n + 3) / 2);
        }
    }
    for n in 2..=upper.min(8) {
        push(n, 2, n == 3);
    }
    cases
}

fn bk_cases() -> Vec<Case<'static>> {
    let mut cases = vec![case("bk:95,150", "not unimodal", || {
        let r = unimodality_report(&closed_form(ClosedForm::Bk { m: 95, n: 150 })?);
        let computed = match r.mode {
            Some(m) => format!("unimodal, mode {m}"),
            None => "not unimodal".into(),
        };
        Ok((computed, !r.is_unimodal))
    })];
    for n in 2..=7 {
        for m in 1..n {
            cases.push(case(
                format!("bk:{m},{n}"),
                "closed form = enumeration",
                move || {
                    let g = parse_spec(&format!("bk:{m},{n}"))?;
                    let (form, oracle) = (closed_form(ClosedForm::Bk { m, n })?, indpoly_enum(&g));
                    Ok((oracle.to_string(), form == oracle))
                },
            ));
        }
    }
    cases
}

fn complete_union_cases(engine: &Engine) -> Vec<Case<'_>> {
    let mut specs: Vec<(String, bool)> = Vec::new();
    for a in 2..=4 {
        for b in 2..=4 {
            specs.push((format!("union(complete:{a},complete:{b})"), false));
            for c in 2..=4 {
                specs.push((
                    format!("union(complete:{a},union(complete:{b},complete:{c}))"),
                    false,
                ));
            }
        }
    }
    specs.push(("union(complete:4,empty:3)".into(), true));
    specs.push(("union(complete:3,union(complete:2,empty:1))".into(), true));
    specs
        .into_iter()
        .map(|(spec, expected)| {
            case(
                spec.clone(),
                if expected { "WLP" } else { "no WLP" },
                move || {
                    let v = engine.verdict(&spec)?;
                    Ok((describe(&v), v.has_wlp == expected))
                },
            )
        })
        .collect()
}
