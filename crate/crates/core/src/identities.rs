//! Exact verification of the identities relating the families.
//!
//! Every catalog entry reduces to equality of rationals or polynomials at
//! each point of a parameter grid. Degenerate identities are checked as
//! polynomial identities in `lambda` (and `x`), never by sampling.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::algebra::combinatorics::{binom, compositions};
use crate::algebra::{falling_factorial, multinomial, BiPoly, Rational, UniPoly, Var};
use crate::error::{Error, Result};
use crate::families::{self, FamilyTag, FamilyValue};
use crate::format::value_json;
use crate::padic::functionals::{
    degenerate_witt, degenerate_witt_order_table, witt, witt_order_table, Kind, PolyIntegrand,
};

/// Grid caps for non-degenerate and degenerate identities.
pub const N_CAP: usize = 20;
pub const N_CAP_DEGENERATE: usize = 12;
pub const R_CAP: u32 = 4;
pub const M_CAP: usize = 50;
pub const D_BOSONIC: [usize; 4] = [1, 2, 3, 5];
pub const D_FERMIONIC: [usize; 3] = [1, 3, 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    T2_3,
    T2_4,
    T2_5,
    T2_6,
    T2_7,
    T2_8,
    T2_9,
    T2_11,
    T2_13,
    T2_14,
    T2_15,
    T2_16,
    T2_17,
    L2_1,
    L2_2,
    L2_10,
    L2_12,
    Eq8,
    Eq10,
    Eq39,
    Eq45,
    Eq26,
    Eq44,
    Oracle,
    Parity,
    Degen0,
    Eq63W,
}

/// Which parameters an entry ranges over.
#[derive(Clone, Copy)]
struct Uses {
    n: bool,
    r: bool,
    m: bool,
    d: bool,
}

const N: Uses = Uses { n: true, r: false, m: false, d: false };
const NR: Uses = Uses { n: true, r: true, m: false, d: false };
const NM: Uses = Uses { n: true, r: false, m: true, d: false };
const ND: Uses = Uses { n: true, r: false, m: false, d: true };

struct Entry {
    id: IdentityId,
    name: &'static str,
    anchor: &'static str,
    uses: Uses,
    degenerate: bool,
    /// Admissible `d` values when the entry ranges over `d`.
    d_allowed: &'static [usize],
    odd_d: bool,
    default: Grid,
}

const fn g(n: usize, r: u32, m: usize) -> Grid {
    Grid { n_max: Some(n), r_max: Some(r), m_max: Some(m), d: None }
}

macro_rules! entry {
    ($id:ident, $name:literal, $anchor:literal, $uses:expr, $deg:expr, $grid:expr) => {
        entry!($id, $name, $anchor, $uses, $deg, $grid, &[], false)
    };
    ($id:ident, $name:literal, $anchor:literal, $uses:expr, $deg:expr, $grid:expr, $dall:expr, $odd:expr) => {
        Entry {
            id: IdentityId::$id,
            name: $name,
            anchor: $anchor,
            uses: $uses,
            degenerate: $deg,
            d_allowed: $dall,
            odd_d: $odd,
            default: $grid,
        }
    };
}

fn catalog() -> Vec<Entry> {
    vec![
        entry!(T2_3, "T2.3", "distribution relation for b_n(x)", ND, false, g(10, 0, 0), &D_BOSONIC, false),
        entry!(T2_4, "T2.4", "b_n^(r) as multinomial convolution of b_i, and as iterated bosonic integral", NR, false, g(10, 4, 0)),
        entry!(T2_5, "T2.5", "sum_m C(n,m) T(m,r) b_{n-m}^(r) = [n = r]", NR, false, g(12, 4, 0)),
        entry!(T2_6, "T2.6", "1^n + 3^n + .. + (2m-1)^n = 2^n (b_{n+1}(m) - b_{n+1}) / (n+1)", NM, false, g(10, 0, 50)),
        entry!(T2_7, "T2.7", "B_{n,lambda}(x) = int (x+y+1/2)_{n,lambda} dmu_1 = sum S_{1,lambda}(n,l) b_l(x) = sum C(n,m) B_{m,lambda} (x)_{n-m,lambda}", N, true, g(8, 0, 0)),
        entry!(T2_8, "T2.8", "B_{n,lambda} = int (y+1/2)_{n,lambda} dmu_1 = sum C(n,l) lambda^l d_l b_{n-l,lambda}", N, true, g(8, 0, 0)),
        entry!(T2_9, "T2.9", "2^n/(n+1) (b_{n+1,lambda}(m) - b_{n+1,lambda}) = sum_{l<m} (2l+1)_{n,2lambda}", NM, true, g(8, 0, 9)),
        entry!(T2_11, "T2.11", "2^{n-1} (E_n(m) + E_n) = sum_{l<m} (-1)^l (2l+1)^n, m odd", NM, false, g(10, 0, 49)),
        entry!(T2_13, "T2.13", "distribution relation for E_n(x), d odd", ND, false, g(10, 0, 0), &D_FERMIONIC, true),
        entry!(T2_14, "T2.14", "E_n^(r) as multinomial convolution of E_i, and as iterated fermionic integral", NR, false, g(10, 4, 0)),
        entry!(T2_15, "T2.15", "sum_m sum_j C(r,j) C(n,m) (j - r/2)^m E_{n-m}^(r) = 2^r [n = 0]", NR, false, g(10, 4, 0)),
        entry!(T2_16, "T2.16", "E_{n,lambda}(x) = int (x+y+1/2)_{n,lambda} dmu_-1 = sum S_{1,lambda}(n,l) E_l(x) = sum C(n,m) E_{m,lambda} (x)_{n-m,lambda}", N, true, g(8, 0, 0)),
        entry!(T2_17, "T2.17", "2^{n-1} (E_{n,lambda}(m) + E_{n,lambda}) = sum_{l<m} (-1)^l (2l+1)_{n,2lambda}, m odd", NM, true, g(8, 0, 9)),
        entry!(L2_1, "L2.1", "int (x+y+1/2)^n dmu_1(y) = b_n(x)", N, false, g(12, 0, 0)),
        entry!(L2_2, "L2.2", "int f dmu_1 = (1/d) sum_a int f(a + d y) dmu_1", ND, false, g(8, 0, 0), &D_BOSONIC, false),
        entry!(L2_10, "L2.10", "int (x+y+1/2)^n dmu_-1(y) = E_n(x)", N, false, g(12, 0, 0)),
        entry!(L2_12, "L2.12", "int f dmu_-1 = sum_a (-1)^a int f(a + d y) dmu_-1, d odd", ND, false, g(8, 0, 0), &D_FERMIONIC, true),
        entry!(Eq8, "EQ8", "I_1(f(y+1)) - I_1(f) = f'(0)", N, false, g(10, 0, 0)),
        entry!(Eq10, "EQ10", "I_-1(f(y+1)) + I_-1(f) = 2 f(0)", N, false, g(10, 0, 0)),
        entry!(Eq39, "EQ39", "I_1(f(y+m)) = sum_{l<m} f'(l) + I_1(f)", NM, false, g(10, 0, 6)),
        entry!(Eq45, "EQ45", "I_-1(f(y+d)) + I_-1(f) = 2 sum_{l<d} (-1)^l f(l), d odd", ND, false, g(10, 0, 0), &D_FERMIONIC, true),
        entry!(Eq26, "EQ26", "b_n(x) = sum C(n,l) x^{n-l} b_l", N, false, g(16, 0, 0)),
        entry!(Eq44, "EQ44", "E_n(x) = sum C(n,l) x^{n-l} E_l", N, false, g(16, 0, 0)),
        entry!(Oracle, "ORACLE", "b_n(x) = B_n(x + 1/2) and E_n(x) = E*_n(x + 1/2)", N, false, g(16, 0, 0)),
        entry!(Parity, "PARITY", "b_n(-x) = (-1)^n b_n(x) and E_n(-x) = (-1)^n E_n(x)", N, false, g(16, 0, 0)),
        entry!(Degen0, "DEGEN0", "lambda := 0 reduces every degenerate family to its classical counterpart", NR, true, g(12, 4, 0)),
        entry!(Eq63W, "EQ63W", "int..int (y_1+..+y_r+r/2)_{n,lambda} dmu_-1.. = E_{n,lambda}^(r)", NR, true, g(8, 4, 0)),
    ]
    .into_iter()
    .map(|mut e| {
        if !e.uses.r {
            e.default.r_max = None;
        }
        if !e.uses.m {
            e.default.m_max = None;
        }
        if e.uses.d {
            e.default.d = Some(e.d_allowed.to_vec());
        }
        e
    })
    .collect()
}

impl IdentityId {
    pub fn all() -> Vec<IdentityId> {
        catalog().into_iter().map(|e| e.id).collect()
    }

    fn entry(self) -> Entry {
        catalog().into_iter().find(|e| e.id == self).expect("every id is catalogued")
    }

    pub fn name(self) -> &'static str {
        self.entry().name
    }

    pub fn anchor(self) -> &'static str {
        self.entry().anchor
    }

    pub fn default_grid(self) -> Grid {
        self.entry().default
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        catalog()
            .into_iter()
            .find(|e| e.name.eq_ignore_ascii_case(s))
            .map(|e| e.id)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Parameter ranges; `None` means the entry does not use that parameter
/// (or, in overrides, that the default stands).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Grid {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<usize>>,
}

/// Test hook: adds 1 to one member of a family as seen by the suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub family: FamilyTag,
    pub n: usize,
    pub r: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    /// `None` runs the whole catalog.
    pub ids: Option<Vec<IdentityId>>,
    /// Applied to every selected entry, for the parameters it uses.
    pub overrides: Grid,
    /// Turn cap violations into warnings instead of errors.
    pub allow_exceed_caps: bool,
    pub perturbation: Option<Perturbation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub params: Map<String, Json>,
    pub lhs: Json,
    pub rhs: Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub anchor: String,
    pub grid: Grid,
    pub status: Status,
    pub points_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub elapsed_ms: f64,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON form without the timing field.
    pub fn comparable_json(&self) -> Json {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v
    }
}

/// Resolves the grid an entry will run over, enforcing caps.
fn resolve_grid(e: &Entry, overrides: &Grid, allow_exceed: bool) -> Result<(Grid, Vec<String>)> {
    let mut grid = e.default.clone();
    if e.uses.n {
        if let Some(n) = overrides.n_max {
            grid.n_max = Some(n);
        }
    }
    if e.uses.r {
        if let Some(r) = overrides.r_max {
            grid.r_max = Some(r);
        }
    }
    if e.uses.m {
        if let Some(m) = overrides.m_max {
            grid.m_max = Some(m);
        }
    }
    if e.uses.d {
        if let Some(d) = &overrides.d {
            grid.d = Some(d.clone());
        }
    }

    let mut violations = Vec::new();
    let n_cap = if e.degenerate { N_CAP_DEGENERATE } else { N_CAP };
    if grid.n_max.is_some_and(|n| n > n_cap) {
        violations.push(format!("n_max {} > {n_cap}", grid.n_max.unwrap()));
    }
    if let Some(r) = grid.r_max {
        if r == 0 {
            return Err(Error::Precondition("r_max must be at least 1".into()));
        }
        if r > R_CAP {
            violations.push(format!("r_max {r} > {R_CAP}"));
        }
    }
    if let Some(m) = grid.m_max {
        if m == 0 {
            return Err(Error::Precondition("m_max must be at least 1".into()));
        }
        if m > M_CAP {
            violations.push(format!("m_max {m} > {M_CAP}"));
        }
    }
    if let Some(ds) = &grid.d {
        if ds.is_empty() || ds.contains(&0) {
            return Err(Error::Precondition("d values must be positive".into()));
        }
        if e.odd_d {
            if let Some(even) = ds.iter().find(|&&d| d % 2 == 0) {
                return Err(Error::Precondition(format!("{} requires odd d, got {even}", e.name)));
            }
        }
        for d in ds {
            if !e.d_allowed.contains(d) {
                violations.push(format!("d = {d} outside {:?}", e.d_allowed));
            }
        }
    }
    if violations.is_empty() {
        Ok((grid, Vec::new()))
    } else if allow_exceed {
        Ok((grid, violations.into_iter().map(|v| format!("grid exceeds cap: {v}")).collect()))
    } else {
        Err(Error::GridCap(format!("{}: {}", e.name, violations.join(", "))))
    }
}

/// Checks ids and grid overrides without running anything.
pub fn check_config(config: &SuiteConfig) -> Result<()> {
    for id in config.ids.clone().unwrap_or_else(IdentityId::all) {
        resolve_grid(&id.entry(), &config.overrides, config.allow_exceed_caps)?;
    }
    Ok(())
}

/// Runs one identity over `grid` (defaults fill unspecified parameters).
pub fn verify(id: IdentityId, grid: &Grid) -> Result<TheoremReport> {
    verify_with(id, grid, false, None)
}

fn verify_with(
    id: IdentityId,
    overrides: &Grid,
    allow_exceed: bool,
    perturbation: Option<&Perturbation>,
) -> Result<TheoremReport> {
    let entry = id.entry();
    let (grid, warnings) = resolve_grid(&entry, overrides, allow_exceed)?;
    let ctx = Ctx { perturbation };
    let mut ck = Checker::default();
    let start = Instant::now();
    run_entry(id, &grid, &ctx, &mut ck)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let status = if ck.witness.is_some() { Status::Fail } else { Status::Pass };
    Ok(TheoremReport {
        id: entry.name.to_string(),
        anchor: entry.anchor.to_string(),
        grid,
        status,
        points_checked: ck.points,
        witness: ck.witness,
        error: None,
        warnings,
        elapsed_ms,
    })
}

/// Runs the selected catalog entries in parallel; reports come back in
/// catalog order and an error in one entry does not stop the others.
pub fn verify_all(config: &SuiteConfig) -> Vec<TheoremReport> {
    let ids = config.ids.clone().unwrap_or_else(IdentityId::all);
    ids.par_iter()
        .map(|&id| {
            verify_with(id, &config.overrides, config.allow_exceed_caps, config.perturbation.as_ref())
                .unwrap_or_else(|e| TheoremReport {
                    id: id.name().to_string(),
                    anchor: id.anchor().to_string(),
                    grid: id.default_grid(),
                    status: Status::Error,
                    points_checked: 0,
                    witness: None,
                    error: Some(e.to_string()),
                    warnings: Vec::new(),
                    elapsed_ms: 0.0,
                })
        })
        .collect()
}

#[derive(Default)]
struct Checker {
    points: usize,
    witness: Option<Witness>,
}

impl Checker {
    /// Records one grid point; returns `false` once a mismatch is found.
    fn check(&mut self, params: &[(&str, Json)], lhs: impl Into<BiPoly>, rhs: impl Into<BiPoly>) -> bool {
        self.points += 1;
        let (lhs, rhs) = (lhs.into(), rhs.into());
        if lhs == rhs {
            return true;
        }
        let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.witness = Some(Witness {
            params,
            lhs: value_json(&FamilyValue::narrow(lhs)),
            rhs: value_json(&FamilyValue::narrow(rhs)),
        });
        false
    }
}

/// Checks one point and returns from the enclosing verifier on mismatch.
macro_rules! check {
    ($ck:expr, [$($k:literal => $v:expr),*], $lhs:expr, $rhs:expr) => {
        if !$ck.check(&[$(($k, json!($v))),*], $lhs, $rhs) {
            return Ok(());
        }
    };
}

/// Family access for the verifiers, with the optional perturbation applied.
struct Ctx<'a> {
    perturbation: Option<&'a Perturbation>,
}

impl Ctx<'_> {
    fn bump(&self, tag: FamilyTag, r: Option<u32>, n: usize) -> bool {
        self.perturbation.is_some_and(|p| p.family == tag && p.n == n && p.r == r)
    }

    fn polys(&self, tag: FamilyTag, mut v: Vec<UniPoly>) -> Vec<UniPoly> {
        for (n, p) in v.iter_mut().enumerate() {
            if self.bump(tag, None, n) {
                *p = &*p + &UniPoly::constant(Var::X, Rational::one());
            }
        }
        v
    }

    fn numbers(&self, tag: FamilyTag, r: u32, mut v: Vec<Rational>) -> Vec<Rational> {
        for (n, q) in v.iter_mut().enumerate() {
            if self.bump(tag, Some(r), n) {
                *q = &*q + &Rational::one();
            }
        }
        v
    }

    /// `b_n(x)`.
    fn b(&self, n_max: usize) -> Vec<UniPoly> {
        self.polys(FamilyTag::Type2Bernoulli, families::type2_bernoulli_table(n_max))
    }

    /// `E_n(x)`.
    fn e(&self, n_max: usize) -> Vec<UniPoly> {
        self.polys(FamilyTag::Type2Euler, families::type2_euler_table(n_max))
    }

    fn b_order(&self, n_max: usize, r: u32) -> Vec<Rational> {
        self.numbers(FamilyTag::Type2BernoulliOrderR, r, families::type2_bernoulli_order_table(n_max, r))
    }

    fn e_order(&self, n_max: usize, r: u32) -> Vec<Rational> {
        self.numbers(FamilyTag::Type2EulerOrderR, r, families::type2_euler_order_table(n_max, r))
    }
}

fn zero() -> Rational {
    Rational::zero()
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from(n.into())
}

fn pow2(e: i64) -> Rational {
    Rational::from(2).pow(e as i32)
}

fn at0(p: &UniPoly) -> Rational {
    p.eval(&zero())
}

fn x_pow(k: usize) -> BiPoly {
    BiPoly::monomial(k, 0, Rational::one())
}

fn lambda_pow(k: usize) -> BiPoly {
    BiPoly::monomial(0, k, Rational::one())
}

/// `(x + y + 1/2)^k`, the test integrands of the distribution and shift checks.
fn witt_integrand(k: usize) -> Result<PolyIntegrand> {
    PolyIntegrand::shifted_power(&(&BiPoly::x() + &BiPoly::constant(Rational::half())), k)
}

fn run_entry(id: IdentityId, grid: &Grid, ctx: &Ctx, ck: &mut Checker) -> Result<()> {
    let n_max = grid.n_max.unwrap_or(0);
    let r_max = grid.r_max.unwrap_or(1);
    let m_max = grid.m_max.unwrap_or(1);
    let ds = grid.d.clone().unwrap_or_default();
    match id {
        IdentityId::T2_3 => distribution(&ctx.b(n_max), &ds, Kind::Bosonic, ck),
        IdentityId::T2_13 => distribution(&ctx.e(n_max), &ds, Kind::Fermionic, ck),
        IdentityId::T2_4 => convolution(ctx, n_max, r_max, Kind::Bosonic, ck),
        IdentityId::T2_14 => convolution(ctx, n_max, r_max, Kind::Fermionic, ck),
        IdentityId::T2_5 => central_factorial_delta(ctx, n_max, r_max, ck),
        IdentityId::T2_6 => odd_power_sum(ctx, n_max, m_max, ck),
        IdentityId::T2_7 => degenerate_expansions(ctx, n_max, Kind::Bosonic, ck),
        IdentityId::T2_16 => degenerate_expansions(ctx, n_max, Kind::Fermionic, ck),
        IdentityId::T2_8 => daehee_expansion(n_max, ck),
        IdentityId::T2_9 => degenerate_odd_power_sum(n_max, m_max, ck),
        IdentityId::T2_11 => alternating_odd_power_sum(ctx, n_max, m_max, ck),
        IdentityId::T2_15 => euler_delta(ctx, n_max, r_max, ck),
        IdentityId::T2_17 => degenerate_alternating_sum(n_max, m_max, ck),
        IdentityId::L2_1 => witt_lemma(&ctx.b(n_max), Kind::Bosonic, ck),
        IdentityId::L2_10 => witt_lemma(&ctx.e(n_max), Kind::Fermionic, ck),
        IdentityId::L2_2 => distribution_lemma(n_max, &ds, Kind::Bosonic, ck),
        IdentityId::L2_12 => distribution_lemma(n_max, &ds, Kind::Fermionic, ck),
        IdentityId::Eq8 => unit_shift(n_max, Kind::Bosonic, ck),
        IdentityId::Eq10 => unit_shift(n_max, Kind::Fermionic, ck),
        IdentityId::Eq39 => bosonic_shift(n_max, m_max, ck),
        IdentityId::Eq45 => fermionic_shift(n_max, &ds, ck),
        IdentityId::Eq26 => binomial_expansion(&ctx.b(n_max), ck),
        IdentityId::Eq44 => binomial_expansion(&ctx.e(n_max), ck),
        IdentityId::Oracle => oracle(ctx, n_max, ck),
        IdentityId::Parity => parity(ctx, n_max, ck),
        IdentityId::Degen0 => degeneration(ctx, n_max, r_max, ck),
        IdentityId::Eq63W => degenerate_order_witt(n_max, r_max, ck),
    }
}

/// `f_n(x) = d^{n-1} sum_a f_n((x+a+(1-d)/2)/d)` (bosonic) or
/// `f_n(x) = d^n sum_a (-1)^a f_n(...)` (fermionic).
fn distribution(polys: &[UniPoly], ds: &[usize], kind: Kind, ck: &mut Checker) -> Result<()> {
    for (n, p) in polys.iter().enumerate() {
        for &d in ds {
            let dq = int(d);
            let inv_d = dq.recip()?;
            let mut sum = UniPoly::zero(Var::X);
            for a in 0..d {
                let shift = &(&int(a) + &(&(&Rational::one() - &dq) * &Rational::half())) * &inv_d;
                let term = p.compose_affine(&inv_d, &shift);
                sum = match kind {
                    Kind::Fermionic if a % 2 == 1 => &sum - &term,
                    _ => &sum + &term,
                };
            }
            let scale = match kind {
                Kind::Bosonic => dq.pow(n as i32 - 1),
                Kind::Fermionic => dq.pow(n as i32),
            };
            check!(ck, ["n" => n, "d" => d], p, sum.scale(&scale));
        }
    }
    Ok(())
}

/// Order-`r` numbers three ways: series power, multinomial convolution of
/// the order-1 numbers, iterated integral.
fn convolution(ctx: &Ctx, n_max: usize, r_max: u32, kind: Kind, ck: &mut Checker) -> Result<()> {
    let base: Vec<Rational> = match kind {
        Kind::Bosonic => ctx.b(n_max).iter().map(at0).collect(),
        Kind::Fermionic => ctx.e(n_max).iter().map(at0).collect(),
    };
    let mut series = Vec::new();
    let mut iterated = Vec::new();
    for r in 1..=r_max {
        series.push(match kind {
            Kind::Bosonic => ctx.b_order(n_max, r),
            Kind::Fermionic => ctx.e_order(n_max, r),
        });
        iterated.push(witt_order_table(n_max, r as usize, kind)?);
    }
    for n in 0..=n_max {
        for r in 1..=r_max {
            let ri = (r - 1) as usize;
            let conv: Rational = compositions(n, r as usize)
                .map(|parts| {
                    let coef = int(multinomial(n, &parts).expect("parts sum to n"));
                    parts.iter().fold(coef, |acc, &i| &acc * &base[i])
                })
                .sum();
            let lhs = series[ri][n].clone();
            check!(ck, ["n" => n, "r" => r, "route" => "convolution"], lhs.clone(), conv);
            check!(ck, ["n" => n, "r" => r, "route" => "iterated_integral"], lhs, iterated[ri][n].clone());
        }
    }
    Ok(())
}

fn central_factorial_delta(ctx: &Ctx, n_max: usize, r_max: u32, ck: &mut Checker) -> Result<()> {
    let tables: Vec<(Vec<Rational>, Vec<Rational>)> = (1..=r_max)
        .map(|r| (families::central_factorial_table(n_max, r), ctx.b_order(n_max, r)))
        .collect();
    for n in 0..=n_max {
        for r in 1..=r_max {
            if (r as usize) > n {
                continue;
            }
            let (t, b) = &tables[(r - 1) as usize];
            let lhs: Rational =
                (r as usize..=n).map(|m| &(&int(binom(n, m)) * &t[m]) * &b[n - m]).sum();
            let rhs = if n == r as usize { Rational::one() } else { zero() };
            check!(ck, ["n" => n, "r" => r], lhs, rhs);
        }
    }
    Ok(())
}

fn odd_power_sum(ctx: &Ctx, n_max: usize, m_max: usize, ck: &mut Checker) -> Result<()> {
    let b = ctx.b(n_max + 1);
    for n in 0..=n_max {
        let p = &b[n + 1];
        let scale = pow2(n as i64).checked_div(&int(n + 1))?;
        for m in 1..=m_max {
            let lhs: BigInt = (1..=m).map(|k| BigInt::from(2 * k - 1).pow(n as u32)).sum();
            let rhs = &(&p.eval(&int(m)) - &at0(p)) * &scale;
            check!(ck, ["n" => n, "m" => m], int(lhs), rhs);
        }
    }
    Ok(())
}

fn alternating_odd_power_sum(ctx: &Ctx, n_max: usize, m_max: usize, ck: &mut Checker) -> Result<()> {
    let e = ctx.e(n_max);
    for (n, p) in e.iter().enumerate() {
        for m in (1..=m_max).step_by(2) {
            let lhs = &(&p.eval(&int(m)) + &at0(p)) * &pow2(n as i64 - 1);
            let rhs: BigInt = (0..m)
                .map(|l| {
                    let v = BigInt::from(2 * l + 1).pow(n as u32);
                    if l % 2 == 0 { v } else { -v }
                })
                .sum();
            check!(ck, ["n" => n, "m" => m], lhs, int(rhs));
        }
    }
    Ok(())
}

fn euler_delta(ctx: &Ctx, n_max: usize, r_max: u32, ck: &mut Checker) -> Result<()> {
    let tables: Vec<Vec<Rational>> = (1..=r_max).map(|r| ctx.e_order(n_max, r)).collect();
    for n in 0..=n_max {
        for r in 1..=r_max {
            let e = &tables[(r - 1) as usize];
            let half_r = Rational::new(r as i64, 2)?;
            let mut lhs = zero();
            for m in 0..=n {
                for j in 0..=r as usize {
                    let base = &int(j) - &half_r;
                    let term = &(&int(binom(r as usize, j) * binom(n, m)) * &base.pow(m as i32)) * &e[n - m];
                    lhs += &term;
                }
            }
            let rhs = if n == 0 { pow2(r as i64) } else { zero() };
            check!(ck, ["n" => n, "r" => r], lhs, rhs);
        }
    }
    Ok(())
}

/// Identities for `B_{n,lambda}(x)` (bosonic) and `E_{n,lambda}(x)` (fermionic):
/// series = Witt integral = Stirling expansion = binomial convolution.
fn degenerate_expansions(ctx: &Ctx, n_max: usize, kind: Kind, ck: &mut Checker) -> Result<()> {
    let (series, classical, numbers) = match kind {
        Kind::Bosonic => (
            families::fully_degenerate_type2_bernoulli_table(n_max),
            ctx.b(n_max),
            families::fully_degenerate_type2_bernoulli_numbers(n_max),
        ),
        Kind::Fermionic => (
            families::degenerate_type2_euler_table(n_max),
            ctx.e(n_max),
            families::degenerate_type2_euler_numbers(n_max),
        ),
    };
    let one = Rational::one();
    let ff: Vec<BiPoly> = (0..=n_max).map(|k| falling_factorial(&BiPoly::x(), k, &one)).collect();
    for n in 0..=n_max {
        let lhs = &series[n];
        let w = degenerate_witt(n, true, kind)?;
        check!(ck, ["n" => n, "route" => "witt_integral"], lhs.clone(), w);

        let stirling: BiPoly = families::degenerate_stirling1_row(n)
            .into_iter()
            .enumerate()
            .map(|(l, s)| &BiPoly::from(s) * &BiPoly::from(&classical[l]))
            .sum();
        check!(ck, ["n" => n, "route" => "stirling"], lhs.clone(), stirling);

        let conv: BiPoly = (0..=n)
            .map(|m| (&BiPoly::from(&numbers[m]) * &ff[n - m]).scale(&int(binom(n, m))))
            .sum();
        check!(ck, ["n" => n, "route" => "convolution"], lhs.clone(), conv);
    }
    Ok(())
}

fn daehee_expansion(n_max: usize, ck: &mut Checker) -> Result<()> {
    let big = families::fully_degenerate_type2_bernoulli_numbers(n_max);
    let carlitz = families::carlitz_degenerate_type2_bernoulli_numbers(n_max);
    let d = families::daehee_table(n_max);
    for n in 0..=n_max {
        let lhs = BiPoly::from(&big[n]);
        check!(ck, ["n" => n, "route" => "witt_integral"], lhs.clone(), degenerate_witt(n, false, Kind::Bosonic)?);
        let rhs: BiPoly = (0..=n)
            .map(|l| (&lambda_pow(l) * &BiPoly::from(&carlitz[n - l])).scale(&(&int(binom(n, l)) * &d[l])))
            .sum();
        check!(ck, ["n" => n, "route" => "daehee"], lhs, rhs);
    }
    Ok(())
}

/// `(2l+1)_{n, 2 lambda}`.
fn odd_falling(l: usize, n: usize) -> BiPoly {
    falling_factorial(&BiPoly::constant(int(2 * l + 1)), n, &Rational::from(2))
}

fn degenerate_odd_power_sum(n_max: usize, m_max: usize, ck: &mut Checker) -> Result<()> {
    let b = families::carlitz_degenerate_type2_bernoulli_table(n_max + 1);
    for n in 0..=n_max {
        let p = &b[n + 1];
        let scale = pow2(n as i64).checked_div(&int(n + 1))?;
        let at_zero = p.substitute(Var::X, &zero());
        for m in 1..=m_max {
            let lhs = (&p.substitute(Var::X, &int(m)) - &at_zero).scale(&scale);
            let rhs: BiPoly = (0..m).map(|l| odd_falling(l, n)).sum();
            check!(ck, ["n" => n, "m" => m], BiPoly::from(lhs), rhs);
        }
    }
    Ok(())
}

fn degenerate_alternating_sum(n_max: usize, m_max: usize, ck: &mut Checker) -> Result<()> {
    let e = families::degenerate_type2_euler_table(n_max);
    for (n, p) in e.iter().enumerate() {
        let at_zero = p.substitute(Var::X, &zero());
        for m in (1..=m_max).step_by(2) {
            let lhs = (&p.substitute(Var::X, &int(m)) + &at_zero).scale(&pow2(n as i64 - 1));
            let rhs: BiPoly = (0..m)
                .map(|l| if l % 2 == 0 { odd_falling(l, n) } else { -&odd_falling(l, n) })
                .sum();
            check!(ck, ["n" => n, "m" => m], BiPoly::from(lhs), rhs);
        }
    }
    Ok(())
}

fn witt_lemma(polys: &[UniPoly], kind: Kind, ck: &mut Checker) -> Result<()> {
    for (n, p) in polys.iter().enumerate() {
        check!(ck, ["n" => n], witt(n, true, kind)?, p);
    }
    Ok(())
}

fn distribution_lemma(n_max: usize, ds: &[usize], kind: Kind, ck: &mut Checker) -> Result<()> {
    for k in 0..=n_max {
        let f = witt_integrand(k)?;
        let lhs = f.integrate(kind);
        for &d in ds {
            let dq = int(d);
            let mut sum = BiPoly::zero();
            for a in 0..d {
                let term = f.compose_affine(&int(a), &dq).integrate(kind);
                sum = match kind {
                    Kind::Fermionic if a % 2 == 1 => &sum - &term,
                    _ => &sum + &term,
                };
            }
            if kind == Kind::Bosonic {
                sum = sum.scale(&dq.recip()?);
            }
            check!(ck, ["degree" => k, "d" => d], lhs.clone(), sum);
        }
    }
    Ok(())
}

fn unit_shift(n_max: usize, kind: Kind, ck: &mut Checker) -> Result<()> {
    let one = Rational::one();
    for k in 0..=n_max {
        let f = witt_integrand(k)?;
        let shifted = f.shift(&one).integrate(kind);
        let plain = f.integrate(kind);
        match kind {
            Kind::Bosonic => {
                check!(ck, ["degree" => k], &shifted - &plain, f.derivative().eval(&zero()));
            }
            Kind::Fermionic => {
                check!(ck, ["degree" => k], &shifted + &plain, f.eval(&zero()).scale(&int(2)));
            }
        }
    }
    Ok(())
}

fn bosonic_shift(n_max: usize, m_max: usize, ck: &mut Checker) -> Result<()> {
    for k in 0..=n_max {
        let f = witt_integrand(k)?;
        let df = f.derivative();
        let plain = f.integrate(Kind::Bosonic);
        for m in 1..=m_max {
            let lhs = f.shift(&int(m)).integrate(Kind::Bosonic);
            let rhs = &(0..m).map(|l| df.eval(&int(l))).sum::<BiPoly>() + &plain;
            check!(ck, ["degree" => k, "m" => m], lhs, rhs);
        }
    }
    Ok(())
}

fn fermionic_shift(n_max: usize, ds: &[usize], ck: &mut Checker) -> Result<()> {
    for k in 0..=n_max {
        let f = witt_integrand(k)?;
        let plain = f.integrate(Kind::Fermionic);
        for &d in ds {
            let lhs = &f.shift(&int(d)).integrate(Kind::Fermionic) + &plain;
            let rhs: BiPoly = (0..d)
                .map(|l| if l % 2 == 0 { f.eval(&int(l)) } else { -&f.eval(&int(l)) })
                .sum::<BiPoly>()
                .scale(&int(2));
            check!(ck, ["degree" => k, "d" => d], lhs, rhs);
        }
    }
    Ok(())
}

fn binomial_expansion(polys: &[UniPoly], ck: &mut Checker) -> Result<()> {
    let numbers: Vec<Rational> = polys.iter().map(at0).collect();
    for (n, p) in polys.iter().enumerate() {
        let rhs: BiPoly = (0..=n).map(|l| x_pow(n - l).scale(&(&int(binom(n, l)) * &numbers[l]))).sum();
        check!(ck, ["n" => n], p, rhs);
    }
    Ok(())
}

fn oracle(ctx: &Ctx, n_max: usize, ck: &mut Checker) -> Result<()> {
    let b = ctx.b(n_max);
    let e = ctx.e(n_max);
    let cb = families::classical_bernoulli_table(n_max);
    let ce = families::classical_euler_table(n_max);
    for n in 0..=n_max {
        check!(ck, ["n" => n, "family" => "type2_bernoulli"], &b[n], families::shift_half(&cb[n]));
        check!(ck, ["n" => n, "family" => "type2_euler"], &e[n], families::shift_half(&ce[n]));
    }
    Ok(())
}

fn parity(ctx: &Ctx, n_max: usize, ck: &mut Checker) -> Result<()> {
    let b = ctx.b(n_max);
    let e = ctx.e(n_max);
    let minus = -Rational::one();
    for n in 0..=n_max {
        let sign = if n % 2 == 0 { Rational::one() } else { minus.clone() };
        for (fam, p) in [("type2_bernoulli", &b[n]), ("type2_euler", &e[n])] {
            check!(ck, ["n" => n, "family" => fam], p.compose_affine(&minus, &zero()), p.scale(&sign));
        }
    }
    Ok(())
}

fn degeneration(ctx: &Ctx, n_max: usize, r_max: u32, ck: &mut Checker) -> Result<()> {
    let b = ctx.b(n_max);
    let e = ctx.e(n_max);
    let fd = families::fully_degenerate_type2_bernoulli_table(n_max);
    let cb = families::carlitz_degenerate_type2_bernoulli_table(n_max);
    let de = families::degenerate_type2_euler_table(n_max);
    let orders: Vec<(Vec<UniPoly>, Vec<Rational>)> = (1..=r_max)
        .map(|r| (families::degenerate_type2_euler_order_table(n_max, r), ctx.e_order(n_max, r)))
        .collect();
    let z = zero();
    for n in 0..=n_max {
        check!(ck, ["n" => n, "family" => "fully_degenerate_type2_bernoulli"], fd[n].substitute(Var::Lambda, &z), &b[n]);
        check!(ck, ["n" => n, "family" => "carlitz_degenerate_type2_bernoulli"], cb[n].substitute(Var::Lambda, &z), &b[n]);
        check!(ck, ["n" => n, "family" => "degenerate_type2_euler"], de[n].substitute(Var::Lambda, &z), &e[n]);
        for r in 1..=r_max {
            let (deg, plain) = &orders[(r - 1) as usize];
            check!(
                ck,
                ["n" => n, "r" => r, "family" => "degenerate_type2_euler_order_r"],
                BiPoly::constant(deg[n].eval(&z)),
                BiPoly::constant(plain[n].clone())
            );
        }
        for (l, s) in families::degenerate_stirling1_row(n).into_iter().enumerate() {
            let expect = if l == n { Rational::one() } else { zero() };
            check!(ck, ["n" => n, "l" => l, "family" => "degenerate_stirling1"], BiPoly::constant(s.eval(&z)), BiPoly::constant(expect));
        }
    }
    Ok(())
}

fn degenerate_order_witt(n_max: usize, r_max: u32, ck: &mut Checker) -> Result<()> {
    let mut series = Vec::new();
    let mut integrals = Vec::new();
    for r in 1..=r_max {
        series.push(families::degenerate_type2_euler_order_table(n_max, r));
        integrals.push(degenerate_witt_order_table(n_max, r as usize, Kind::Fermionic)?);
    }
    for n in 0..=n_max {
        for r in 1..=r_max {
            let ri = (r - 1) as usize;
            check!(ck, ["n" => n, "r" => r], integrals[ri][n].clone(), &series[ri][n]);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(n: usize, r: Option<u32>, m: Option<usize>) -> Grid {
        Grid { n_max: Some(n), r_max: r, m_max: m, d: None }
    }

    #[test]
    fn catalog_is_closed_and_named() {
        let all = IdentityId::all();
        assert_eq!(all.len(), 27);
        for id in &all {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), *id);
            assert!(!id.anchor().is_empty());
        }
        assert!(matches!("BOGUS".parse::<IdentityId>(), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn grid_caps() {
        let big = Grid { n_max: Some(21), ..Grid::default() };
        assert!(matches!(verify(IdentityId::Eq26, &big), Err(Error::GridCap(_))));
        let big_deg = Grid { n_max: Some(13), ..Grid::default() };
        assert!(matches!(verify(IdentityId::T2_7, &big_deg), Err(Error::GridCap(_))));
        let even = Grid { n_max: Some(2), d: Some(vec![2]), ..Grid::default() };
        assert!(matches!(verify(IdentityId::T2_13, &even), Err(Error::Precondition(_))));
        let bad_d = Grid { n_max: Some(2), d: Some(vec![4]), ..Grid::default() };
        assert!(matches!(verify(IdentityId::T2_3, &bad_d), Err(Error::GridCap(_))));
        // overridable with a warning
        let r = verify_with(IdentityId::T2_3, &bad_d, true, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn small_examples() {
        // n = r = 2: both sides 1
        let r = verify(IdentityId::T2_5, &Grid { n_max: Some(2), r_max: Some(2), ..Grid::default() }).unwrap();
        assert!(r.passed());
        let r = verify(IdentityId::T2_15, &single(0, Some(3), None)).unwrap();
        assert!(r.passed());
        let r = verify(IdentityId::T2_6, &single(2, None, Some(2))).unwrap();
        assert!(r.passed());
        let r = verify(IdentityId::T2_11, &single(2, None, Some(3))).unwrap();
        assert!(r.passed());
        let r = verify(IdentityId::T2_9, &single(1, None, Some(2))).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn perturbation_produces_witness() {
        let cfg = SuiteConfig {
            ids: Some(vec![IdentityId::T2_5]),
            perturbation: Some(Perturbation { family: FamilyTag::Type2BernoulliOrderR, n: 2, r: Some(2) }),
            ..SuiteConfig::default()
        };
        let reports = verify_all(&cfg);
        assert_eq!(reports[0].status, Status::Fail);
        let w = reports[0].witness.as_ref().unwrap();
        // first failing point in (n, r) order: n = 4, r = 2 uses b_2^(2)
        assert_eq!(w.params["n"], json!(4));
        assert_eq!(w.params["r"], json!(2));
        assert_ne!(w.lhs, w.rhs);
    }
}
