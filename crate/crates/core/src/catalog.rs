//! Known classifications for paths, cycles, CE graphs, pans and tadpoles
//! `T_{3,n}`, stored as data and resolved to concrete degrees.
//!
//! Degrees in the failure listings are expressed relative to the mode of
//! the family's independence polynomial (`lambda_n`, `rho_n`, `chi_n`,
//! `zeta_n`, and `rho_{n+3}` for tadpoles).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Sense, WlpVerdict};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::indpoly::{closed_form, mode_formula, unimodality_report, ClosedForm, ModeFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Path,
    Cycle,
    Ce,
    Pan,
    Tadpole3,
}

/// Verbatim listings: WLP set, tabulated range, and the `n` failing
/// surjectivity at the mode and injectivity one degree below it.
struct Listing {
    wlp: &'static [usize],
    range: (usize, usize),
    surjective_at_mode: &'static [usize],
    injective_below_mode: &'static [usize],
    /// Whether the listed failures are the only ones.
    exhaustive: bool,
}

const PATHS: Listing = Listing {
    wlp: &[1, 2, 3, 4, 5, 6, 7, 9, 10, 13],
    range: (1, 17),
    surjective_at_mode: &[8, 11, 14, 15, 17],
    injective_below_mode: &[12, 16],
    exhaustive: true,
};

const CYCLES: Listing = Listing {
    wlp: &[3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 17],
    range: (3, 20),
    surjective_at_mode: &[12, 15, 18, 19],
    injective_below_mode: &[16, 20],
    exhaustive: false,
};

const CES: Listing = Listing {
    wlp: &[4, 5, 6, 7, 8, 10, 11, 14],
    range: (4, 20),
    surjective_at_mode: &[9, 12, 15, 16, 18, 19],
    injective_below_mode: &[13, 17, 20],
    exhaustive: false,
};

const PANS: Listing = Listing {
    wlp: &[3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16],
    range: (3, 20),
    surjective_at_mode: &[11, 14, 17, 18, 20],
    injective_below_mode: &[15, 19],
    exhaustive: false,
};

const TADPOLES: Listing = Listing {
    wlp: &[1, 3, 4, 7],
    range: (1, 17),
    surjective_at_mode: &[2, 5, 8, 9, 11, 12, 14, 15, 16, 17],
    injective_below_mode: &[2, 6, 10, 13, 14, 17],
    exhaustive: false,
};

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Ce,
        FamilyKind::Pan,
        FamilyKind::Tadpole3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Ce => "ce",
            FamilyKind::Pan => "pan",
            FamilyKind::Tadpole3 => "tadpole3",
        }
    }

    /// Name of the mode the failure degrees refer to.
    pub fn mode_symbol(self) -> &'static str {
        match self {
            FamilyKind::Path => "lambda_n",
            FamilyKind::Cycle => "rho_n",
            FamilyKind::Ce => "chi_n",
            FamilyKind::Pan => "zeta_n",
            FamilyKind::Tadpole3 => "rho_{n+3}",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            FamilyKind::Path | FamilyKind::Tadpole3 => 1,
            FamilyKind::Cycle | FamilyKind::Pan => 3,
            FamilyKind::Ce => 4,
        }
    }

    fn listing(self) -> &'static Listing {
        match self {
            FamilyKind::Path => &PATHS,
            FamilyKind::Cycle => &CYCLES,
            FamilyKind::Ce => &CES,
            FamilyKind::Pan => &PANS,
            FamilyKind::Tadpole3 => &TADPOLES,
        }
    }

    /// Range of `n` covered by the explicit failure listings.
    pub fn listed_range(self) -> (usize, usize) {
        self.listing().range
    }

    fn check_domain(self, n: usize) -> Result<()> {
        if n < self.min_n() {
            Err(Error::OutOfDomain {
                kind: self.name(),
                n,
            })
        } else {
            Ok(())
        }
    }

    pub fn family_spec(self, n: usize) -> Result<FamilySpec> {
        self.check_domain(n)?;
        Ok(match self {
            FamilyKind::Path => FamilySpec::Path(n),
            FamilyKind::Cycle => FamilySpec::Cycle(n),
            FamilyKind::Ce => FamilySpec::Ce(n),
            FamilyKind::Pan => FamilySpec::Pan(n),
            FamilyKind::Tadpole3 => FamilySpec::Tadpole3(n),
        })
    }

    /// The mode the failure degrees are anchored at.
    pub fn mode(self, n: usize) -> Result<usize> {
        self.check_domain(n)?;
        match self {
            FamilyKind::Path => mode_formula(ModeFamily::Path, n),
            FamilyKind::Cycle => mode_formula(ModeFamily::Cycle, n),
            FamilyKind::Tadpole3 => mode_formula(ModeFamily::Cycle, n + 3),
            FamilyKind::Ce => closed_form_mode(ClosedForm::Ce(n)),
            FamilyKind::Pan => closed_form_mode(ClosedForm::Pan(n)),
        }
    }
}

fn closed_form_mode(kind: ClosedForm) -> Result<usize> {
    unimodality_report(&closed_form(kind)?)
        .mode
        .ok_or_else(|| Error::Inconsistent(format!("{kind:?} is not unimodal")))
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "tadpole" && *k == FamilyKind::Tadpole3))
            .ok_or_else(|| Error::Syntax {
                offset: 0,
                message: format!("unknown family kind '{s}'"),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpectedFailure {
    pub degree: usize,
    pub sense: Sense,
}

impl fmt::Display for ExpectedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at degree {}", self.sense, self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub kind: FamilyKind,
    pub n: usize,
    pub expected_wlp: bool,
    pub expected_failures: Vec<ExpectedFailure>,
    /// When false, degrees not listed are unspecified rather than passing.
    pub exhaustive: bool,
}

impl ClassificationEntry {
    /// Compares a verdict with the entry; `Err` describes each mismatch.
    pub fn compare(&self, verdict: &WlpVerdict) -> std::result::Result<(), String> {
        let mut problems = Vec::new();
        if verdict.has_wlp != self.expected_wlp {
            problems.push(format!(
                "has_wlp = {}, expected {}",
                verdict.has_wlp, self.expected_wlp
            ));
        }
        for f in &self.expected_failures {
            match verdict.records.get(f.degree) {
                Some(r) if r.fails(f.sense) => {}
                Some(r) => problems.push(format!(
                    "degree {}: expected {} failure, rank {} with h = ({}, {})",
                    f.degree, f.sense, r.rank, r.h_k, r.h_k1
                )),
                None => problems.push(format!("degree {} beyond the socle", f.degree)),
            }
        }
        if self.exhaustive {
            let mut listed: Vec<usize> = self.expected_failures.iter().map(|f| f.degree).collect();
            listed.sort_unstable();
            listed.dedup();
            let found = verdict.deficient_degrees();
            if found != listed {
                problems.push(format!("deficient degrees {found:?}, expected {listed:?}"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems.join("; "))
        }
    }
}

/// Membership in the family's WLP set.
pub fn expected_wlp(kind: FamilyKind, n: usize) -> Result<bool> {
    kind.check_domain(n)?;
    Ok(kind.listing().wlp.contains(&n))
}

/// Failures stated for `n` in the listed range, degrees resolved.
pub fn expected_failures(kind: FamilyKind, n: usize) -> Result<Vec<ExpectedFailure>> {
    kind.check_domain(n)?;
    let listing = kind.listing();
    let (min, max) = listing.range;
    if !(min..=max).contains(&n) {
        return Err(Error::NotTabulated {
            kind: kind.name(),
            n,
            min,
            max,
        });
    }
    let mode = kind.mode(n)?;
    let mut out = Vec::new();
    if listing.surjective_at_mode.contains(&n) {
        out.push(ExpectedFailure {
            degree: mode,
            sense: Sense::Surjective,
        });
    }
    if listing.injective_below_mode.contains(&n) {
        // a listing at degree -1 would be meaningless; keep it visible
        let degree = mode.checked_sub(1).ok_or_else(|| {
            Error::Inconsistent(format!("{kind} n = {n}: injectivity listed below mode 0"))
        })?;
        out.push(ExpectedFailure {
            degree,
            sense: Sense::Injective,
        });
    }
    Ok(out)
}

pub fn classification(kind: FamilyKind, n: usize) -> Result<ClassificationEntry> {
    Ok(ClassificationEntry {
        kind,
        n,
        expected_wlp: expected_wlp(kind, n)?,
        expected_failures: expected_failures(kind, n)?,
        exhaustive: kind.listing().exhaustive,
    })
}

/// Smallest `n` for which the family's induction argument applies.
pub fn asymptotic_threshold(kind: FamilyKind) -> Option<usize> {
    match kind {
        FamilyKind::Path => Some(17),
        FamilyKind::Cycle | FamilyKind::Ce | FamilyKind::Pan => Some(21),
        FamilyKind::Tadpole3 => None,
    }
}

/// The failure predicted for all large `n`.
pub fn asymptotic_surjectivity_claim(kind: FamilyKind, n: usize) -> Result<ExpectedFailure> {
    let Some(threshold) = asymptotic_threshold(kind) else {
        return Err(Error::OutOfDomain {
            kind: "asymptotic claim for tadpole3",
            n,
        });
    };
    if n < threshold {
        return Err(Error::OutOfDomain {
            kind: "asymptotic claim below threshold",
            n,
        });
    }
    let surjective = |degree| ExpectedFailure {
        degree,
        sense: Sense::Surjective,
    };
    match kind {
        FamilyKind::Pan => {
            let zeta = kind.mode(n)?;
            let chi_next = FamilyKind::Ce.mode(n + 1)?;
            let lambda = |j| mode_formula(ModeFamily::Path, j);
            if zeta == chi_next || lambda(n)? == lambda(n - 3)? {
                Ok(surjective(zeta))
            } else {
                Ok(ExpectedFailure {
                    degree: zeta - 1,
                    sense: Sense::Injective,
                })
            }
        }
        _ => Ok(surjective(kind.mode(n)?)),
    }
}

/// Injectivity failure at `lambda_n - 1` for `n >= 12` with
/// `lambda_n = lambda_{n-1} + 1`; `None` when the hypothesis does not hold.
pub fn path_injectivity_claim(n: usize) -> Result<Option<ExpectedFailure>> {
    if n < 12 {
        return Err(Error::OutOfDomain {
            kind: "path injectivity claim below 12",
            n,
        });
    }
    let lambda = mode_formula(ModeFamily::Path, n)?;
    Ok(
        (lambda == mode_formula(ModeFamily::Path, n - 1)? + 1).then(|| ExpectedFailure {
            degree: lambda - 1,
            sense: Sense::Injective,
        }),
    )
}

/// One row of the table of modes for `n = 1..=13`; `None` marks `n`
/// outside the family's domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeRow {
    pub kind: FamilyKind,
    pub symbol: &'static str,
    pub values: [Option<usize>; 13],
}

pub fn mode_table() -> Vec<ModeRow> {
    const D: Option<usize> = None;
    let row = |kind, symbol, v: [Option<usize>; 13]| ModeRow {
        kind,
        symbol,
        values: v,
    };
    let s = Some;
    vec![
        row(
            FamilyKind::Path,
            "lambda_n",
            [
                s(0),
                s(1),
                s(1),
                s(1),
                s(2),
                s(2),
                s(2),
                s(2),
                s(3),
                s(3),
                s(3),
                s(4),
                s(4),
            ],
        ),
        row(
            FamilyKind::Cycle,
            "rho_n",
            [
                D,
                D,
                s(1),
                s(1),
                s(1),
                s(2),
                s(2),
                s(2),
                s(3),
                s(3),
                s(3),
                s(3),
                s(4),
            ],
        ),
        row(
            FamilyKind::Ce,
            "chi_n",
            [
                D,
                D,
                D,
                s(1),
                s(1),
                s(2),
                s(2),
                s(2),
                s(2),
                s(3),
                s(3),
                s(3),
                s(4),
            ],
        ),
        row(
            FamilyKind::Pan,
            "zeta_n",
            [
                D,
                D,
                s(1),
                s(1),
                s(2),
                s(2),
                s(2),
                s(3),
                s(3),
                s(3),
                s(3),
                s(4),
                s(4),
            ],
        ),
    ]
}

/// The whole catalog as one JSON document.
pub fn catalog_json() -> Value {
    let families: Vec<Value> = FamilyKind::ALL
        .into_iter()
        .map(|kind| {
            let (min, max) = kind.listed_range();
            let entries: Vec<Value> = (min..=max)
                .map(|n| match classification(kind, n) {
                    Ok(e) => json!({
                        "n": n,
                        "mode": kind.mode(n).ok(),
                        "expected_wlp": e.expected_wlp,
                        "expected_failures": e.expected_failures,
                    }),
                    Err(err) => json!({ "n": n, "error": err.to_string() }),
                })
                .collect();
            json!({
                "kind": kind,
                "mode_symbol": kind.mode_symbol(),
                "wlp_set": kind.listing().wlp,
                "listed_range": [min, max],
                "exhaustive_failures": kind.listing().exhaustive,
                "asymptotic_threshold": asymptotic_threshold(kind),
                "entries": entries,
            })
        })
        .collect();
    json!({ "families": families, "mode_table": mode_table() })
}
