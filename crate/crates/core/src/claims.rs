//! Registry of checkable statements and the report produced by running them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::abelian::{abelian_invariants, surgery_h1, AbelianInvariants};
use crate::builders::{
    hatx_quotient_order, klein_bundle, mapping_torus, strong_action_admissible, surgery_group, twist_spun_trefoil,
    AutomorphismStatus, FramedLinkDiagram,
};
use crate::coset::{enumerate, group_order, Enumeration, EnumerationLimits, GroupOrder};
use crate::matrix::IntegerMatrix;
use crate::models::{
    check_hom, closure_order, quaternion_order3, semidirect_by_labels, sl2_3, verify_virtually_cyclic_iso, Bounded,
    Element, FiniteTable, GroupModel, GroupOps, Homomorphism, IsoCertificate,
};
use crate::monodromy::{fiber_monodromy_order, isotopy_family_checks, quaternion_rotation, verify_matrix_identities};
use crate::parse::{parse_presentation, parse_word};
use crate::presentation::Presentation;
use crate::words::Word;

pub const HOPF_CIRCLES: &str = include_str!("../fixtures/diagrams/hopf_circles_q8.json");
const EXPECTATIONS: &str = include_str!("../expectations.json");

const G_TEXT: &str = "< t, a | t^3 = a^3, a t a = t a t >";
const Q8_TEXT: &str = "< u, v | u v u = v, v u v = u >";
const M_TEXT: &str =
    "< t, x, tau, xi | t tau t^-1 = xi, t xi t^-1 = tau xi, x tau x^-1 = tau^-1, x xi x^-1 = xi^-1, t x t^-1 = x^-1 >";
const PROBE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    Flagged,
}

/// How a claim's expected value is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Fixed in code.
    Exact,
    /// Read from the reviewed expectations file.
    Recorded,
    /// Recorded, and reported as flagged because the statement it shadows is
    /// ambiguous.
    Flagged,
}

/// Where an exact expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Literature,
    Immediate,
    Oracle(&'static str),
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Basis::Literature => f.write_str("literature"),
            Basis::Immediate => f.write_str("immediate"),
            Basis::Oracle(o) => write!(f, "oracle: {o}"),
        }
    }
}

pub struct Context {
    pub limits: EnumerationLimits,
    pub expectations: Expectations,
}

impl Context {
    pub fn new(limits: EnumerationLimits) -> Self {
        Context { limits, expectations: Expectations::builtin() }
    }
}

pub struct Outcome {
    pub status: Status,
    pub witness: Value,
}

impl Outcome {
    fn check(pass: bool, witness: Value) -> Self {
        Outcome { status: if pass { Status::Pass } else { Status::Fail }, witness }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        Outcome { status: Status::Fail, witness: json!({ "error": e.to_string() }) }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    /// The statement being checked, written formally.
    pub anchor: &'static str,
    pub expectation: Expectation,
    pub basis: Basis,
    procedure: fn(&Context) -> Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: Status,
    pub witness: Value,
    pub paper_anchor: String,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claims: Vec<ClaimReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("unknown claim id {0}")]
    UnknownClaim(String),
    #[error("bad expectations file: {0}")]
    Expectations(String),
}

impl Report {
    /// 0 when nothing failed or stopped at a limit, 1 on any failure, 3 when
    /// the only problems are enumerations that hit their limits.
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.claims.iter().any(|c| c.status == Status::Unknown) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every `ms` zeroed, for byte comparisons between runs.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.claims.iter_mut().for_each(|c| c.ms = 0);
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let status = serde_json::to_string(&c.status).expect("status serializes");
            let _ = writeln!(out, "{:<18} {:<9} {:>6} ms  {}", c.id, status.trim_matches('"'), c.ms, c.witness);
        }
        let count = |s: Status| self.claims.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "{} claims: {} pass, {} fail, {} unknown, {} flagged",
            self.claims.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Unknown),
            count(Status::Flagged)
        );
        out
    }

    pub fn get(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.id == id)
    }
}

/// Reviewed values for recorded claims, keyed by claim id.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Expectations(pub BTreeMap<String, RecordedValue>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordedValue {
    pub oracle: String,
    pub value: Value,
}

impl Expectations {
    pub fn builtin() -> Self {
        Self::parse(EXPECTATIONS).expect("embedded expectations parse")
    }

    pub fn parse(text: &str) -> Result<Self, ClaimError> {
        serde_json::from_str(text).map_err(|e| ClaimError::Expectations(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("expectations serialize") + "\n"
    }

    /// Expectations file contents capturing the computed values of the
    /// recorded claims in `report`.
    pub fn record(report: &Report) -> Self {
        let mut m = BTreeMap::new();
        for claim in registry() {
            if claim.expectation == Expectation::Exact {
                continue;
            }
            if let Some(r) = report.get(claim.id) {
                let value = r.witness.get("computed").cloned().unwrap_or(Value::Null);
                let oracle = match claim.basis {
                    Basis::Oracle(o) => o.to_string(),
                    b => b.to_string(),
                };
                m.insert(claim.id.to_string(), RecordedValue { oracle, value });
            }
        }
        Expectations(m)
    }
}

// ---------------------------------------------------------------------------
// Helpers

fn pres(text: &str) -> Presentation {
    parse_presentation(text).expect("built-in presentation parses")
}

fn word(p: &Presentation, text: &str) -> Word {
    parse_word(text, Some(p.generators())).expect("built-in word parses")
}

/// Finite order, or an `unknown` outcome describing the limit that was hit.
fn finite_order(p: &Presentation, ctx: &Context) -> Result<usize, Outcome> {
    match group_order(p, ctx.limits) {
        Ok(GroupOrder::Finite(n)) => Ok(n),
        Ok(GroupOrder::Unknown(u)) => Err(Outcome {
            status: Status::Unknown,
            witness: json!({ "limit": u.limit, "peak_cosets": u.peak }),
        }),
        Err(e) => Err(Outcome::error(e)),
    }
}

fn quotient(p: &Presentation, rel: &str, ctx: &Context) -> Result<usize, Outcome> {
    finite_order(&p.add_relators(&[word(p, rel)]).map_err(Outcome::error)?, ctx)
}

fn order_value(o: &GroupOrder) -> Value {
    match o {
        GroupOrder::Finite(n) => json!(n),
        GroupOrder::Unknown(_) => json!("unknown"),
    }
}

fn recorded(ctx: &Context, id: &str, computed: Value, flagged: bool, note: Option<&str>) -> Outcome {
    let mut witness = json!({ "computed": computed });
    if let Some(n) = note {
        witness["note"] = json!(n);
    }
    match ctx.expectations.0.get(id) {
        None => {
            witness["error"] = json!("no recorded expectation");
            Outcome { status: Status::Fail, witness }
        }
        Some(r) if r.value == witness["computed"] => {
            let status = if flagged { Status::Flagged } else { Status::Pass };
            Outcome { status, witness }
        }
        Some(r) => {
            witness["expected"] = r.value.clone();
            Outcome { status: Status::Fail, witness }
        }
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

macro_rules! tri_err {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::error(e),
        }
    };
}

// ---------------------------------------------------------------------------
// Procedures

fn q8_order(ctx: &Context) -> Outcome {
    let n = tri!(finite_order(&pres(Q8_TEXT), ctx));
    Outcome::check(n == 8, json!({ "order": n }))
}

fn q8_structure(ctx: &Context) -> Outcome {
    let p = pres(Q8_TEXT);
    let table = match enumerate(&p, &[], ctx.limits) {
        Ok(Enumeration::Complete(t)) => t,
        Ok(Enumeration::Incomplete(i)) => {
            return Outcome { status: Status::Unknown, witness: json!({ "limit": i.limit, "peak_cosets": i.peak }) };
        }
        Err(e) => return Outcome::error(e),
    };
    let rep = tri_err!(table.permutation_rep());
    let names: Vec<String> = rep.keys().map(|g| g.to_string()).collect();
    let perms: Vec<Vec<usize>> = rep.into_values().collect();
    let ft = match FiniteTable::from_permutations(&names, &perms, 10_000) {
        Ok(t) => t,
        Err(b) => return Outcome::error(format!("closure {b}")),
    };
    let center = ft.center();
    let mut noncentral: Vec<usize> =
        (0..ft.order()).filter(|a| !center.contains(a)).map(|a| ft.element_order(a)).collect();
    noncentral.sort_unstable();
    noncentral.dedup();
    let cyclic4 = ft.cyclic_subgroups_of_order(4);
    let q = FiniteTable::quaternion();
    let pass = ft.order() == 8 && center.len() == 2 && noncentral == [4] && cyclic4 == 3;
    let reference = q.center().len() == 2 && q.cyclic_subgroups_of_order(4) == 3;
    Outcome::check(
        pass && reference,
        json!({
            "order": ft.order(),
            "center_size": center.len(),
            "noncentral_element_orders": noncentral,
            "cyclic_subgroups_of_order_4": cyclic4,
        }),
    )
}

fn g_24(ctx: &Context) -> Outcome {
    let n = tri!(quotient(&pres(G_TEXT), "t^3", ctx));
    Outcome::check(n == 24, json!({ "order": n }))
}

fn sl23_iso(ctx: &Context) -> Outcome {
    let g = pres(G_TEXT);
    let m = GroupModel::ModPMatrix(sl2_3());
    let h = tri_err!(Homomorphism::from_text(g.clone(), m.clone(), &[("t", "[[1,1],[0,1]]"), ("a", "[[1,0],[2,1]]")]));
    let hom = tri_err!(check_hom(&h));
    let images: Vec<Element> = h.images.values().cloned().collect();
    let image_order = closure_order(&m, &images, 10_000);
    let t3 = tri_err!(h.eval(&word(&g, "t^3")));
    let quotient_order = tri!(quotient(&g, "t^3", ctx));
    let pass = hom.passed() && image_order == Bounded::Within(24) && t3 == m.identity() && quotient_order == 24;
    Outcome::check(
        pass,
        json!({
            "relators_hold": hom.passed(),
            "image_order": image_order.to_string(),
            "t^3_image": m.format(&t3),
            "quotient_order": quotient_order,
        }),
    )
}

fn g_abelian(_: &Context) -> Outcome {
    let inv = abelian_invariants(&pres(G_TEXT));
    Outcome::check(inv == AbelianInvariants::new(1, &[]), json!({ "abelianization": inv.to_string() }))
}

fn f2_images(f2: &Presentation, pairs: &[(&str, &str)]) -> BTreeMap<crate::words::Generator, Word> {
    pairs.iter().map(|(g, w)| (f2.generator(g).expect("generator").clone(), word(f2, w))).collect()
}

fn klein_m() -> Result<Presentation, crate::builders::BuilderError> {
    let f2 = pres("< tau, xi | >");
    let kb = klein_bundle(
        &f2,
        &f2_images(&f2, &[("tau", "xi"), ("xi", "tau xi")]),
        &f2_images(&f2, &[("tau", "tau^-1"), ("xi", "xi^-1")]),
    )?;
    Ok(kb.presentation)
}

fn m_presentation(_: &Context) -> Outcome {
    let built = tri_err!(klein_m());
    let literal = pres(M_TEXT);
    let same = built.generators() == literal.generators() && built.relators() == literal.relators();
    Outcome::check(same, json!({ "built": built.to_string(), "matches_literal": same }))
}

fn h_pi1(ctx: &Context) -> Outcome {
    let m = tri_err!(klein_m());
    let h = tri_err!(m.add_relators(&[word(&m, "x t x^-1 t")]));
    let n = tri!(finite_order(&h, ctx));
    let inv = abelian_invariants(&h);
    Outcome::check(
        n == 8 && inv == AbelianInvariants::new(0, &[2, 2]),
        json!({ "order": n, "abelianization": inv.to_string() }),
    )
}

fn fiber_iso(ctx: &Context) -> Outcome {
    let target = quaternion_order3();
    let g = pres(G_TEXT);
    let h = tri_err!(Homomorphism::from_text(g.clone(), target.clone(), &[("t", "(1,1)"), ("a", "(-i,1)")]));
    let witnesses = vec![
        (tri_err!(target.parse_element("(i,0)")), word(&g, "t a^-1")),
        (tri_err!(target.parse_element("(k,0)")), word(&g, "a^-1 t")),
        (tri_err!(target.parse_element("(1,1)")), word(&g, "t")),
    ];
    let uv: Vec<Element> = witnesses[..2].iter().map(|(e, _)| e.clone()).collect();
    let cert = IsoCertificate { hom: h, central_word: word(&g, "t^3"), witnesses };
    let report = tri_err!(verify_virtually_cyclic_iso(&cert, ctx.limits, PROBE));
    let fiber_order = closure_order(&target, &uv, 10_000);

    // The mapping torus of the order-3 automorphism on <u, v> certifies the same way.
    let q8 = pres(Q8_TEXT);
    let aut = f2_images(&q8, &[("u", "v u"), ("v", "u")]);
    let mt = tri_err!(mapping_torus(&q8, &aut));
    let s = mt.stable_letter.to_string();
    let mp = &mt.presentation;
    let h2 = tri_err!(Homomorphism::from_text(mp.clone(), target.clone(), &[("u", "(i,0)"), ("v", "(k,0)"), (&s, "(1,1)")]));
    let witnesses2 = vec![
        (tri_err!(target.parse_element("(i,0)")), word(mp, "u")),
        (tri_err!(target.parse_element("(k,0)")), word(mp, "v")),
        (tri_err!(target.parse_element("(1,1)")), word(mp, &s)),
    ];
    let cert2 = IsoCertificate { hom: h2, central_word: word(mp, &format!("{s}^3")), witnesses: witnesses2 };
    let report2 = tri_err!(verify_virtually_cyclic_iso(&cert2, ctx.limits, PROBE));

    let pass = report.pass
        && report.source_quotient_order == Some(24)
        && fiber_order == Bounded::Within(8)
        && report2.pass
        && mt.status == AutomorphismStatus::Verified;
    Outcome::check(
        pass,
        json!({
            "certificate": report,
            "fiber_closure_order": fiber_order.to_string(),
            "mapping_torus": mp.to_string(),
            "mapping_torus_certificate": report2,
        }),
    )
}

fn hopf_diagram() -> Result<FramedLinkDiagram, crate::builders::BuilderError> {
    FramedLinkDiagram::from_json(HOPF_CIRCLES)
}

fn surgery_q(ctx: &Context) -> Outcome {
    let d = tri_err!(hopf_diagram());
    let g = tri_err!(surgery_group(&d));
    let n = tri!(finite_order(&g, ctx));
    Outcome::check(n == 8, json!({ "order": n, "generators": g.generators().len(), "relators": g.relators().len() }))
}

fn h1_q(_: &Context) -> Outcome {
    let d = tri_err!(hopf_diagram());
    let lm = tri_err!(d.linking_matrix());
    let literal = IntegerMatrix::parse("-1 1 1; 1 -1 1; 1 1 -1").expect("literal matrix");
    let h1 = tri_err!(surgery_h1(&lm));
    let g = tri_err!(surgery_group(&d));
    let ab = abelian_invariants(&g);
    let expected = AbelianInvariants::new(0, &[2, 2]);
    Outcome::check(
        lm == literal && h1 == expected && ab == expected,
        json!({ "linking_matrix": lm.to_string(), "h1": h1.to_string(), "abelianization": ab.to_string() }),
    )
}

fn gluck(ctx: &Context) -> Outcome {
    let n = tri!(quotient(&pres(G_TEXT), "t", ctx));
    Outcome::check(n == 1, json!({ "order": n }))
}

fn w_cap(ctx: &Context) -> Outcome {
    let n = tri!(quotient(&pres(Q8_TEXT), "u", ctx));
    Outcome::check(n == 2, json!({ "order": n }))
}

fn t4_quotient(ctx: &Context) -> Outcome {
    let g = pres(G_TEXT);
    let o4 = tri_err!(group_order(&tri_err!(g.add_relators(&[word(&g, "t^4")])), ctx.limits));
    let o2 = tri_err!(group_order(&tri_err!(g.add_relators(&[word(&g, "t^2")])), ctx.limits));
    if matches!(o4, GroupOrder::Unknown(_)) || matches!(o2, GroupOrder::Unknown(_)) {
        return Outcome { status: Status::Unknown, witness: json!({ "t^4": order_value(&o4), "t^2": order_value(&o2) }) };
    }
    recorded(
        ctx,
        "CS-T4-QUOTIENT",
        json!({ "G/<<t^4>>": order_value(&o4), "G/<<t^2>>": order_value(&o2) }),
        true,
        Some("which quotient models the capped manifold is not decided here"),
    )
}

fn twist_family(ctx: &Context) -> Outcome {
    let mut abel = BTreeMap::new();
    let mut meridian = BTreeMap::new();
    let mut pass = true;
    for n in 1..=6 {
        let gn = tri_err!(twist_spun_trefoil(n));
        if n <= 5 {
            let inv = abelian_invariants(&gn);
            pass &= inv == AbelianInvariants::new(1, &[]);
            abel.insert(format!("G_{n}"), inv.to_string());
        }
        let o = tri!(quotient(&gn, "t", ctx));
        pass &= o == 1;
        meridian.insert(format!("G_{n}/<<t>>"), o);
    }
    let g3 = tri_err!(twist_spun_trefoil(3));
    let literal = pres(G_TEXT);
    let same = g3.relators() == literal.relators() && g3.generators() == literal.generators();
    Outcome::check(pass && same, json!({ "abelianizations": abel, "meridian_quotients": meridian, "G_3_is_G": same }))
}

fn hatx_grid(ctx: &Context) -> Outcome {
    let mut grid = BTreeMap::new();
    for n in 1..=4 {
        let mut row = Vec::new();
        for m in 1..=6 {
            let o = tri_err!(hatx_quotient_order(n, m, ctx.limits));
            if matches!(o, GroupOrder::Unknown(_)) {
                return Outcome { status: Status::Unknown, witness: json!({ "n": n, "m": m }) };
            }
            row.push(order_value(&o));
        }
        grid.insert(format!("n={n}"), row);
    }
    recorded(ctx, "CS-HATX-GRID", json!(grid), false, Some("rows n = 1..4, entries |G_n/<<t^m>>| for m = 1..6"))
}

fn matrix_ab(_: &Context) -> Outcome {
    let r = verify_matrix_identities();
    Outcome::check(r.pass(), json!(r))
}

fn phi_order3(_: &Context) -> Outcome {
    let order = fiber_monodromy_order();
    let (qt, map) = quaternion_rotation();
    let e = |l: &str| qt.index_of(l).expect("label");
    let orbit: Vec<&str> = [e("i"), map[e("i")], map[map[e("i")]], map[map[map[e("i")]]]].iter().map(|&x| qt.label(x)).collect();
    let fixes_minus_one = map[e("-1")] == e("-1");
    let identity_order = crate::monodromy::automorphism_order(&qt, &(0..qt.order()).collect::<Vec<_>>());
    Outcome::check(
        order == 3 && fixes_minus_one && identity_order == 1,
        json!({ "order": order, "orbit_of_i": orbit, "fixes_-1": fixes_minus_one }),
    )
}

fn isotopy_det(_: &Context) -> Outcome {
    let r = isotopy_family_checks();
    Outcome::check(r.pass(), json!(r))
}

fn strong_action(_: &Context) -> Outcome {
    let mut admissible = Vec::new();
    for m in 1..=12 {
        match strong_action_admissible(m) {
            Ok(true) => admissible.push(m),
            Ok(false) => {}
            Err(e) => return Outcome::error(e),
        }
    }
    let pass = strong_action_admissible(3) == Ok(false)
        && strong_action_admissible(4) == Ok(true)
        && strong_action_admissible(6) == Ok(false);
    Outcome::check(pass, json!({ "admissible_m_up_to_12": admissible }))
}

/// Second certificate used by tests and examples: `G_2 = Z/3 x| Z` with the
/// inversion action.
pub fn g2_certificate() -> IsoCertificate {
    let g2 = twist_spun_trefoil(2).expect("n = 2 is valid");
    let target = semidirect_by_labels(FiniteTable::cyclic(3), &[("1", "2")], "Z/3 x| Z").expect("inversion is an automorphism");
    let h = Homomorphism::from_text(g2.clone(), target.clone(), &[("t", "(0,1)"), ("a", "(1,1)")]).expect("valid images");
    let witnesses = vec![
        (target.parse_element("(1,0)").expect("element"), word(&g2, "a t^-1")),
        (target.parse_element("(0,1)").expect("element"), word(&g2, "t")),
    ];
    IsoCertificate { hom: h, central_word: word(&g2, "t^2"), witnesses }
}

pub fn registry() -> Vec<Claim> {
    use Basis::*;
    use Expectation::*;
    let c = |id, description, anchor, expectation, basis, procedure| Claim { id, description, anchor, expectation, basis, procedure };
    vec![
        c("CS-Q8-ORDER", "the two-generator quaternion presentation has order 8", "|<u, v | uvu = v, vuv = u>| = 8", Exact, Literature, q8_order),
        c("CS-Q8-STRUCTURE", "that group is the quaternion group", "Z(<u,v>) has order 2, every other element has order 4, three cyclic subgroups of order 4", Exact, Oracle("multiplication table"), q8_structure),
        c("CS-G-24", "quotient of G by t^3", "|<t, a | t^3 = a^3, ata = tat, t^3>| = 24", Exact, Literature, g_24),
        c("CS-SL23-ISO", "G/<<t^3>> maps onto SL(2,3)", "t -> [[1,1],[0,1]], a -> [[1,0],[2,1]] mod 3 is a surjection G -> SL(2,Z/3) killing t^3, and |G/<<t^3>>| = |SL(2,Z/3)| = 24", Exact, Oracle("matrix multiplication and BFS closure"), sl23_iso),
        c("CS-G-ABELIAN", "abelianization of G", "H1(G) = Z", Exact, Oracle("Smith normal form"), g_abelian),
        c("CS-M-PRESENTATION", "Klein-bottle bundle presentation", "pi1(M) = <t, x, tau, xi | t tau t^-1 = xi, t xi t^-1 = tau xi, x tau x^-1 = tau^-1, x xi x^-1 = xi^-1, t x t^-1 = x^-1>", Exact, Literature, m_presentation),
        c("CS-H-PI1", "adding the 2-handle relation to pi1(M)", "pi1(M)/<<x t x^-1 t>> has order 8 and abelianization Z/2 + Z/2", Exact, Oracle("coset enumeration"), h_pi1),
        c("CS-FIBER-ISO", "G is the mapping torus group of the order-3 quaternion automorphism", "G = Q8 x| Z with Z acting by i -> j -> k -> i", Exact, Oracle("certificate checks (a)-(d)"), fiber_iso),
        c("CS-SURGERY-Q", "surgery on three -1-framed Hopf circles", "pi1 of -1 surgery on three mutually linked right-handed Hopf circles has order 8", Exact, Oracle("coset enumeration"), surgery_q),
        c("CS-H1-Q", "homology of that surgery", "coker [[-1,1,1],[1,-1,1],[1,1,-1]] = Z/2 + Z/2", Exact, Oracle("Smith normal form"), h1_q),
        c("CS-GLUCK-PI1", "killing the meridian of G", "G/<<t>> = 1", Exact, Immediate, gluck),
        c("CS-W-CAP", "capping the quaternion group along one generator", "Q8/<<u>> has order 2", Exact, Oracle("coset enumeration"), w_cap),
        c("CS-T4-QUOTIENT", "quotients of G by powers of the meridian", "|G/<<t^4>>| and |G/<<t^2>>|, reported side by side", Flagged, Oracle("coset enumeration"), t4_quotient),
        c("CS-TWIST-FAMILY", "twist-spun trefoil groups", "H1(G_n) = Z for n = 1..5, G_n/<<t>> = 1 for n = 1..6, G_3 = G", Exact, Oracle("Smith normal form and coset enumeration"), twist_family),
        c("CS-HATX-GRID", "finite quotients of the twist-spun groups", "|G_n/<<t^m>>| for n <= 4, m <= 6", Recorded, Oracle("coset enumeration"), hatx_grid),
        c("CS-MATRIX-AB", "torus monodromies", "A^2 = B^2 = [[1,1],[1,2]], B^-1 A = -I, A has infinite order", Exact, Literature, matrix_ab),
        c("CS-PHI-ORDER-3", "fiber monodromy order", "i -> j -> k -> i has order 3 in Aut(Q8)", Exact, Literature, phi_order3),
        c("CS-ISOTOPY-DET", "isotopy family of monodromies", "phi_0 = Phi, phi_1 = diag(-1,1,-1), det of upper block of phi_t = -(t^2 - t + 1)", Exact, Literature, isotopy_det),
        c("CS-STRONG-ACTION", "admissible cyclic actions", "Z_m admissible iff m != 0 mod 3", Exact, Literature, strong_action),
    ]
}

/// Run the selected claims (all when `selection` is `None`) in parallel;
/// reports are ordered by id.
pub fn run_claims(selection: Option<&[String]>, ctx: &Context) -> Result<Report, ClaimError> {
    let all = registry();
    let chosen: Vec<&Claim> = match selection {
        None => all.iter().collect(),
        Some(ids) => ids
            .iter()
            .map(|id| all.iter().find(|c| c.id == id).ok_or_else(|| ClaimError::UnknownClaim(id.clone())))
            .collect::<Result<_, _>>()?,
    };
    let mut claims: Vec<ClaimReport> = chosen
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let out = (c.procedure)(ctx);
            ClaimReport {
                id: c.id.to_string(),
                status: out.status,
                witness: out.witness,
                paper_anchor: c.anchor.to_string(),
                ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    claims.dedup_by(|a, b| a.id == b.id);
    Ok(Report { claims })
}
