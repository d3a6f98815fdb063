//! Named identity checks over parameter grids.
//!
//! Every identity in [`Identity::ALL`] runs over a [`Grid`] and produces a
//! [`VerificationReport`] with one cell per parameter combination. Cells are
//! sorted by parameters so reports are reproducible.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::bijection::{verify_contraction, verify_split_roundtrip, verify_tuple_counts, Contraction};
use crate::counting::{catalan, catalan_k2_recurrence, catalan_km, catalan_m, KmRecurrence, SpecialIdentity};
use crate::enumerate::{km_trees, plane_forests};
use crate::hookpoly::{
    h_forest_closed, h_forest_enum, h_forest_recur, h_mary_closed, h_mary_enum, h_mary_recur,
    product_identity_lhs, verify_operator_transport, verify_operator_transport_enumerated,
    verify_special_values, verify_ternary_forest_equality, Family,
};
use crate::poly::{integer, Rational};
use crate::series::{lagrange_coefficient, solve_c_iterates, solve_via_lagrange, verify_k2_ode};
use crate::tree::PlaneTree;
use crate::{Error, Result, DEFAULT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Postnikov,
    Lascoux,
    MaryHook,
    ForestHook,
    KmCount,
    TupleCounts,
    SplitRoundtrip,
    Contractions,
    SpecialValues,
    TernaryEqualsForest,
    GfCoefficients,
    K2Ode,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Postnikov,
        Identity::Lascoux,
        Identity::MaryHook,
        Identity::ForestHook,
        Identity::KmCount,
        Identity::TupleCounts,
        Identity::SplitRoundtrip,
        Identity::Contractions,
        Identity::SpecialValues,
        Identity::TernaryEqualsForest,
        Identity::GfCoefficients,
        Identity::K2Ode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Postnikov => "postnikov",
            Identity::Lascoux => "lascoux",
            Identity::MaryHook => "mary-hook",
            Identity::ForestHook => "forest-hook",
            Identity::KmCount => "km-count",
            Identity::TupleCounts => "tuple-counts",
            Identity::SplitRoundtrip => "split-roundtrip",
            Identity::Contractions => "contractions",
            Identity::SpecialValues => "special-values",
            Identity::TernaryEqualsForest => "ternary-equals-forest",
            Identity::GfCoefficients => "gf-coefficients",
            Identity::K2Ode => "k2-ode",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Identity::Postnikov => "n!/2^n sum over binary trees of prod (1 + 1/h_v) = (n+1)^(n-1)",
            Identity::Lascoux => "operator transport of H_n gives the product forms of sum prod (x + 1/h_v)",
            Identity::MaryHook => "m-ary hook polynomial: enumeration = recurrence = closed form; H(k) = C_{k,m-1}(n)",
            Identity::ForestHook => "forest hook polynomial: enumeration = recurrence = closed form; H(k) = C_{k,2}(n)",
            Identity::KmCount => "|T_{k,m}(n)| = C_{k,m}(n), vertex counts, recurrences",
            Identity::TupleCounts => "the three tuple counts of the circled-crucial-vertex argument",
            Identity::SplitRoundtrip => "split and merge are mutually inverse",
            Identity::Contractions => "reduction identities and contraction bijections for k = 1 or m = 1",
            Identity::SpecialValues => "special values x = 0, x = m, x = -2 of the product forms",
            Identity::TernaryEqualsForest => "H_{n,3}(x) = H_n(x)",
            Identity::GfCoefficients => "C = (1 + z C^m)^k solved directly and by Lagrange inversion",
            Identity::K2Ode => "differential equation of the (k,2) generating function, alpha = 1",
        }
    }

    /// Grid used when no flags override it.
    pub fn default_grid(self) -> Grid {
        let range = |lo: u32, hi: u32| (lo..=hi).collect::<Vec<_>>();
        let ns = |hi: usize| (0..=hi).collect::<Vec<_>>();
        let base = Grid { ks: vec![], ms: vec![], ns: vec![], order: 20, enum_max_n: 5, cap: DEFAULT_CAP };
        match self {
            Identity::Postnikov => Grid { ns: ns(7), ..base },
            Identity::Lascoux => Grid { ms: range(1, 4), ns: ns(8), ..base },
            Identity::MaryHook => Grid { ks: range(1, 3), ms: range(1, 4), ns: ns(6), ..base },
            Identity::ForestHook => Grid { ks: range(1, 3), ns: ns(7), ..base },
            Identity::KmCount => Grid { ks: range(1, 3), ms: range(1, 3), ns: ns(3), ..base },
            Identity::TupleCounts | Identity::SplitRoundtrip => {
                Grid { ks: range(1, 3), ms: range(1, 3), ns: ns(2), ..base }
            }
            Identity::Contractions => Grid { ks: range(1, 3), ms: range(1, 3), ns: ns(3), order: 30, ..base },
            Identity::SpecialValues => Grid { ms: range(1, 3), ns: ns(7), enum_max_n: 7, ..base },
            Identity::TernaryEqualsForest => Grid { ns: ns(6), ..base },
            Identity::GfCoefficients => Grid { ks: range(1, 3), ms: range(1, 3), ..base },
            Identity::K2Ode => Grid { ks: range(1, 4), ..base },
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Parameter grid.
///
/// `ms` is the total arity for the m-ary hook identities (`lascoux`,
/// `mary-hook`) and the `m` of (k,m)-ary trees elsewhere; for
/// `special-values` it is the `m` of (m+1)-ary trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub ks: Vec<u32>,
    pub ms: Vec<u32>,
    pub ns: Vec<usize>,
    /// Series order, or the largest n for closed-form-only checks.
    pub order: usize,
    /// Largest n at which enumeration-side checks run, where an identity has
    /// both an enumerated and a polynomial side.
    pub enum_max_n: usize,
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Both sides of a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default, PartialOrd, Ord)]
pub struct CellParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl fmt::Display for CellParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(v) = &self.family {
            parts.push(format!("family={v}"));
        }
        if let Some(v) = &self.name {
            parts.push(format!("name={v}"));
        }
        for (key, v) in [("k", self.k.map(|v| v as usize)), ("m", self.m.map(|v| v as usize)), ("n", self.n), ("order", self.order)] {
            if let Some(v) = v {
                parts.push(format!("{key}={v}"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub params: CellParams,
    pub status: Status,
    /// Number of individual checks run in this cell.
    pub checks: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub description: String,
    pub grid: Grid,
    pub cells: Vec<Cell>,
    pub passed: usize,
    pub failed: usize,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Collects checks for one cell.
#[derive(Default)]
struct CellBuilder {
    checks: usize,
    witnesses: Vec<Witness>,
}

impl CellBuilder {
    fn eq<T: PartialEq + fmt::Display>(&mut self, check: &str, lhs: &T, rhs: &T) {
        self.checks += 1;
        if lhs != rhs {
            self.witnesses.push(Witness { check: check.into(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    fn truth(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.witnesses.push(Witness { check: check.into(), lhs: detail(), rhs: "true".into() });
        }
    }

    fn finish(self, params: CellParams) -> Cell {
        let status = if self.witnesses.is_empty() { Status::Pass } else { Status::Fail };
        Cell { params, status, checks: self.checks, witnesses: self.witnesses }
    }
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * i))
}

fn pow_rational(base: usize, exp: i64) -> Rational {
    let b = Rational::from_integer(BigInt::from(base));
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

/// `n!/2^n * sum over binary trees of prod (1 + 1/h_v)`.
pub fn postnikov_lhs(n: usize, cap: u64) -> Result<Rational> {
    let sum = product_identity_lhs(Family::Mary(2), n, &Rational::one(), cap)?.eval(&Rational::one());
    Ok(sum * factorial(n) / pow_rational(2, n as i64))
}

/// `(n+1)^(n-1)`.
pub fn postnikov_rhs(n: usize) -> Rational {
    pow_rational(n + 1, n as i64 - 1)
}

fn family_label(family: Family) -> String {
    match family {
        Family::Mary(m) => format!("{m}-ary"),
        Family::Forest => "forest".into(),
    }
}

fn run_cells(identity: Identity, grid: &Grid) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    match identity {
        Identity::Postnikov => {
            for &n in &grid.ns {
                let mut c = CellBuilder::default();
                c.eq("n!/2^n sum prod(1+1/h) = (n+1)^(n-1)", &postnikov_lhs(n, grid.cap)?, &postnikov_rhs(n));
                cells.push(c.finish(CellParams { n: Some(n), ..Default::default() }));
            }
        }
        Identity::Lascoux => {
            let families = grid.ms.iter().map(|&m| Family::Mary(m)).chain([Family::Forest]);
            for family in families {
                for &n in &grid.ns {
                    let mut c = CellBuilder::default();
                    c.truth("transport(closed H) = closed product", verify_operator_transport(family, n)?, || {
                        "transported closed form differs".into()
                    });
                    if n <= grid.enum_max_n {
                        let ok = verify_operator_transport_enumerated(family, n, grid.cap)?;
                        c.truth("transport(enumerated H) = enumerated product sum", ok, || {
                            "transported enumeration differs".into()
                        });
                    }
                    let (m, fam) = match family {
                        Family::Mary(m) => (Some(m), None),
                        Family::Forest => (None, Some(family_label(family))),
                    };
                    cells.push(c.finish(CellParams { family: fam, m, n: Some(n), ..Default::default() }));
                }
            }
        }
        Identity::MaryHook => {
            for &m_total in &grid.ms {
                for &n in &grid.ns {
                    let mut c = CellBuilder::default();
                    let closed = h_mary_closed(n, m_total);
                    let recur = h_mary_recur(n, m_total);
                    c.eq("recurrence = closed", &recur, &closed);
                    if n <= grid.enum_max_n.max(6) {
                        c.eq("enumeration = closed", &h_mary_enum(n, m_total, grid.cap)?, &closed);
                    }
                    c.eq("degree", &closed.degree().unwrap_or(0), &n);
                    for &k in &grid.ks {
                        let value = closed.eval(&integer(k as i64));
                        let count = Rational::from_integer(catalan_km(k as u64, m_total as u64 - 1, n as u64));
                        if m_total > 1 {
                            c.eq(&format!("H({k}) = C_{{{k},{}}}({n})", m_total - 1), &value, &count);
                        }
                    }
                    cells.push(c.finish(CellParams { m: Some(m_total), n: Some(n), ..Default::default() }));
                }
            }
        }
        Identity::ForestHook => {
            for &n in &grid.ns {
                let mut c = CellBuilder::default();
                let closed = h_forest_closed(n);
                c.eq("recurrence = closed", &h_forest_recur(n), &closed);
                c.eq("enumeration = closed", &h_forest_enum(n, grid.cap)?, &closed);
                for &k in &grid.ks {
                    let count = Rational::from_integer(catalan_km(k as u64, 2, n as u64));
                    c.eq(&format!("H({k}) = C_{{{k},2}}({n})"), &closed.eval(&integer(k as i64)), &count);
                }
                let forests = BigInt::from(plane_forests(n, grid.cap)?.len());
                c.eq("H(1) = catalan", &closed.eval(&Rational::one()), &Rational::from_integer(catalan(n as u64)));
                c.eq("|F(n)| = catalan", &forests, &catalan(n as u64));
                cells.push(c.finish(CellParams { n: Some(n), ..Default::default() }));
            }
        }
        Identity::KmCount => {
            for &k in &grid.ks {
                for &m in &grid.ms {
                    let mut rec = KmRecurrence::new(k as u64, m as u64);
                    for &n in &grid.ns {
                        let mut c = CellBuilder::default();
                        let trees = km_trees(k, m, n, grid.cap)?;
                        let closed = catalan_km(k as u64, m as u64, n as u64);
                        c.eq("enumerated = closed", &BigInt::from(trees.len()), &closed);
                        c.eq("recurrence = closed", &rec.value(n as u64)?, &closed);
                        if m == 2 {
                            c.eq("k2 recurrence = closed", &catalan_k2_recurrence(k as u64, n as u64)?, &closed);
                        }
                        let distinct: HashSet<&PlaneTree> = trees.iter().collect();
                        c.eq("no duplicates", &distinct.len(), &trees.len());
                        let (ku, mu) = (k as usize, m as usize);
                        let bad = trees.iter().find(|t| {
                            t.km_order(k, m) != Some(n)
                                || t.vertex_count() != (mu * n + 1) * (ku + 1)
                                || t.even_level_count() != mu * n + 1
                                || t.leaf_count() != (mu * n + 1) * ku - n
                        });
                        c.truth("vertex counts", bad.is_none(), || format!("{}", bad.unwrap()));
                        cells.push(c.finish(CellParams { k: Some(k), m: Some(m), n: Some(n), ..Default::default() }));
                    }
                }
            }
        }
        Identity::TupleCounts => {
            for &k in &grid.ks {
                for &m in &grid.ms {
                    for &n in &grid.ns {
                        let mut c = CellBuilder::default();
                        let t = verify_tuple_counts(k, m, n, grid.cap)?;
                        c.eq("marked trees = n C(n)", &t.marked_trees, &t.expected_marked);
                        c.eq("anywhere-circled = ((mn+1)k+1-n) conv", &t.anywhere, &t.expected_anywhere);
                        c.eq("anywhere = (m+1) last-position", &t.anywhere, &(&t.last_position * BigInt::from(m + 1)));
                        c.eq("last-position = marked trees", &t.last_position, &t.marked_trees);
                        c.truth("split image = last-position tuples", t.split_image_matches, || "image differs".into());
                        cells.push(c.finish(CellParams { k: Some(k), m: Some(m), n: Some(n), ..Default::default() }));
                    }
                }
            }
        }
        Identity::SplitRoundtrip => {
            for &k in &grid.ks {
                for &m in &grid.ms {
                    for &n in &grid.ns {
                        let mut c = CellBuilder::default();
                        let r = verify_split_roundtrip(k, m, n, grid.cap)?;
                        c.checks += r.checked;
                        for f in r.failures {
                            c.witnesses.push(Witness { check: "round trip".into(), lhs: f, rhs: "identity".into() });
                        }
                        cells.push(c.finish(CellParams { k: Some(k), m: Some(m), n: Some(n), ..Default::default() }));
                    }
                }
            }
        }
        Identity::Contractions => {
            let mut c = CellBuilder::default();
            for n in 0..=grid.order as u64 {
                c.eq("C_{1,2}(n) = C(n)", &catalan_km(1, 2, n), &catalan(n));
                c.eq("C_{2,1}(n) = C(n+1)", &catalan_km(2, 1, n), &catalan(n + 1));
                for &m in &grid.ms {
                    c.eq("C_{1,m}(n) = C_m(n)", &catalan_km(1, m as u64, n), &catalan_m(m as u64, n));
                }
                for &k in &grid.ks {
                    c.eq("C_{k,1}(n) = C_k(n+1)", &catalan_km(k as u64, 1, n), &catalan_m(k as u64, n + 1));
                }
            }
            cells.push(c.finish(CellParams { name: Some("reductions".into()), order: Some(grid.order), ..Default::default() }));
            for (kind, label, param) in grid
                .ks
                .iter()
                .map(|&k| (Contraction::K1(k), "k1", k))
                .chain(grid.ms.iter().map(|&m| (Contraction::OneM(m), "1m", m)))
            {
                for &n in &grid.ns {
                    let mut c = CellBuilder::default();
                    let r = verify_contraction(kind, n, grid.cap)?;
                    c.eq("injective", &r.distinct_images, &r.domain_size);
                    c.truth("image inside target", r.all_in_target, || "image outside target".into());
                    c.eq("cardinality", &BigInt::from(r.domain_size), &r.target_size);
                    c.truth("image = target", r.image_is_target, || "image differs from target".into());
                    let (k, m) = match kind {
                        Contraction::K1(_) => (Some(param), None),
                        Contraction::OneM(_) => (None, Some(param)),
                    };
                    cells.push(c.finish(CellParams { name: Some(label.into()), k, m, n: Some(n), ..Default::default() }));
                }
            }
        }
        Identity::SpecialValues => {
            for special in SpecialIdentity::ALL {
                let ms: Vec<u32> = if special.is_forest() { vec![0] } else { grid.ms.clone() };
                for m in ms {
                    for &n in &grid.ns {
                        let cap = if n <= grid.enum_max_n { grid.cap } else { 0 };
                        let v = verify_special_values(special, m as u64, n, cap)?;
                        let mut c = CellBuilder::default();
                        c.eq("polynomial route", &v.transported, &v.expected);
                        if let Some(e) = &v.enumerated {
                            c.eq("enumerated route", e, &v.expected);
                        }
                        let m_param = (!special.is_forest()).then_some(m);
                        cells.push(c.finish(CellParams {
                            name: Some(special.name().into()),
                            m: m_param,
                            n: Some(n),
                            ..Default::default()
                        }));
                    }
                }
            }
        }
        Identity::TernaryEqualsForest => {
            for &n in &grid.ns {
                let mut c = CellBuilder::default();
                c.truth("H_{n,3} = H_n", verify_ternary_forest_equality(n), || {
                    format!("{} vs {}", h_mary_closed(n, 3), h_forest_closed(n))
                });
                cells.push(c.finish(CellParams { n: Some(n), ..Default::default() }));
            }
        }
        Identity::GfCoefficients => {
            for &k in &grid.ks {
                for &m in &grid.ms {
                    let mut c = CellBuilder::default();
                    let iterates = solve_c_iterates(k, m, grid.order);
                    let solved = iterates.last().expect("iterates").clone();
                    for n in 0..=grid.order {
                        let closed = Rational::from_integer(catalan_km(k as u64, m as u64, n as u64));
                        c.eq(&format!("[z^{n}] C"), solved.coeff(n), &closed);
                        c.eq(&format!("lagrange [z^{n}]"), &lagrange_coefficient(k as u64, m as u64, n as u64), &closed);
                    }
                    c.eq("lagrange series", &solve_via_lagrange(k, m, grid.order), &solved);
                    for (j, it) in iterates.iter().enumerate().skip(1) {
                        c.truth("coefficientwise stability", it.agrees_through(&solved, (j - 1).min(grid.order)), || {
                            format!("round {j}")
                        });
                    }
                    cells.push(c.finish(CellParams { k: Some(k), m: Some(m), order: Some(grid.order), ..Default::default() }));
                }
            }
        }
        Identity::K2Ode => {
            for &k in &grid.ks {
                let mut c = CellBuilder::default();
                let r = verify_k2_ode(k, grid.order)?;
                c.truth("differentiated form", r.differentiated, || "differs".into());
                c.eq("alpha", &r.alpha, &Rational::one());
                c.truth("integrated form", r.integrated, || "differs".into());
                c.truth("(C-1)/z = (2k-1)C^2 + (1-k) C D/z", r.recurrence_form, || "differs".into());
                cells.push(c.finish(CellParams { k: Some(k), order: Some(grid.order), ..Default::default() }));
            }
        }
    }
    Ok(cells)
}

/// Runs one identity over a grid. Resource errors (cap exceeded) abort the
/// run; identity violations are recorded as failed cells.
pub fn run(identity: Identity, grid: &Grid) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut cells = run_cells(identity, grid)?;
    cells.sort_by(|a, b| a.params.cmp(&b.params));
    let failed = cells.iter().filter(|c| c.status == Status::Fail).count();
    Ok(VerificationReport {
        identity: identity.name().into(),
        description: identity.description().into(),
        grid: grid.clone(),
        passed: cells.len() - failed,
        failed,
        cells,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
