//! Acceptance suite. Run with `cargo test --test acceptance`; prints one
//! `PASS`/`FAIL` line per criterion and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, ensure, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use cobord::abelian::{abelian_invariants, smith_normal_form, surgery_h1, AbelianInvariants};
use cobord::builders::{klein_bundle, surgery_group, twist_spun_trefoil, wirtinger, FramedLinkDiagram};
use cobord::claims::{run_claims, Context, HOPF_CIRCLES};
use cobord::coset::{enumerate, group_order, quotient_order, EnumerationLimits, Strategy};
use cobord::matrix::IntegerMatrix;
use cobord::models::{
    check_hom, closure_order, element_order, quaternion_order3, sl2_3, verify_virtually_cyclic_iso, Bounded,
    FiniteTable, GroupModel, HomCheck, Homomorphism, IsoCertificate,
};
use cobord::monodromy::{isotopy_family, matrix_a, matrix_b, matrix_phi, verify_matrix_identities, Poly, RationalMatrix};
use cobord::parse::{parse_presentation, parse_word};
use cobord::presentation::Presentation;
use cobord::words::{free_reduce, Generator, Letter, Word};

const Q8: &str = "< u, v | u v u = v, v u v = u >";
const G: &str = "< t, a | t^3 = a^3, a t a = t a t >";
const STRATEGIES: [Strategy; 2] = [Strategy::Hlt, Strategy::Felsch];

fn limits(s: Strategy) -> EnumerationLimits {
    EnumerationLimits::default().with_strategy(s)
}

fn word(p: &Presentation, s: &str) -> Word {
    parse_word(s, Some(p.generators())).expect("word over the presentation")
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

fn order_all(p: &Presentation) -> Result<usize> {
    let mut seen = Vec::new();
    for s in STRATEGIES {
        let o = group_order(p, limits(s))?.finite().ok_or_else(|| anyhow!("{s}: enumeration did not complete"))?;
        seen.push(o);
    }
    ensure!(seen.windows(2).all(|w| w[0] == w[1]), "strategies disagree: {seen:?}");
    Ok(seen[0])
}

fn quaternion_structure() -> Result<()> {
    let q8 = parse_presentation(Q8)?;
    ensure!(order_all(&q8)? == 8, "order is not 8");
    let table = enumerate(&q8, &[], limits(Strategy::Hlt))?.complete().ok_or_else(|| anyhow!("incomplete"))?;
    table.verify().map_err(|e| anyhow!(e))?;
    let rep = table.permutation_rep()?;
    let names: Vec<String> = rep.keys().map(|g| g.name().to_string()).collect();
    let perms: Vec<Vec<usize>> = rep.into_values().collect();
    let group = FiniteTable::from_permutations(&names, &perms, 100).map_err(|b| anyhow!("closure {b}"))?;
    ensure!(group.order() == 8, "regular representation has order {}", group.order());
    ensure!(group.center().len() == 2, "center has {} elements", group.center().len());
    let c4 = group.cyclic_subgroups_of_order(4);
    ensure!(c4 == 3, "{c4} cyclic subgroups of order 4");
    let oracle = FiniteTable::quaternion();
    ensure!(oracle.center().len() == 2 && oracle.cyclic_subgroups_of_order(4) == 3, "hand-built Q8 disagrees");
    Ok(())
}

fn g_mod_t3() -> Result<()> {
    let g = parse_presentation(G)?;
    for s in STRATEGIES {
        let o = quotient_order(&g, &[word(&g, "t^3")], limits(s))?;
        ensure!(o.finite() == Some(24), "{s}: |G/<<t^3>>| = {o}");
    }
    Ok(())
}

fn sl2_3_image() -> Result<()> {
    let g = parse_presentation(G)?;
    let m = GroupModel::ModPMatrix(sl2_3());
    let h = Homomorphism::from_text(g.clone(), m.clone(), &[("t", "[[1,1],[0,1]]"), ("a", "[[1,0],[2,1]]")])?;
    ensure!(check_hom(&h)? == HomCheck::Pass, "relators do not hold");
    let images: Vec<_> = g.generators().iter().map(|x| h.eval(&Word::gen(x))).collect::<Result<_, _>>()?;
    ensure!(closure_order(&m, &images, 1000) == Bounded::Within(24), "image is not of order 24");
    // t^3 dies in SL(2,3), so the surjection factors through G/<<t^3>>, also of order 24.
    ensure!(element_order(&m, &h.eval(&word(&g, "t"))?, 100) == Bounded::Within(3), "t does not map to an element of order 3");
    let q = quotient_order(&g, &[word(&g, "t^3")], limits(Strategy::Hlt))?;
    ensure!(q.finite() == Some(24), "quotient order {q}");
    Ok(())
}

fn klein_bundle_quotient() -> Result<()> {
    let f2 = parse_presentation("< tau, xi | >")?;
    let map = |pairs: &[(&str, &str)]| -> BTreeMap<Generator, Word> {
        pairs.iter().map(|(g, w)| (f2.generator(g).unwrap().clone(), word(&f2, w))).collect()
    };
    let kb = klein_bundle(&f2, &map(&[("tau", "xi"), ("xi", "tau xi")]), &map(&[("tau", "tau^-1"), ("xi", "xi^-1")]))?;
    let literal = parse_presentation(
        "< t, x, tau, xi | t tau t^-1 = xi, t xi t^-1 = tau xi, x tau x^-1 = tau^-1, x xi x^-1 = xi^-1, t x t^-1 = x^-1 >",
    )?;
    let m = kb.presentation;
    ensure!(m.relators().len() == 5, "{} relators", m.relators().len());
    let mut built: Vec<_> = m.generators().to_vec();
    let mut expected: Vec<_> = literal.generators().to_vec();
    built.sort();
    expected.sort();
    ensure!(built == expected, "generators {built:?}");
    ensure!(m.relators() == literal.relators(), "relators differ: {m}");
    let h = m.add_relators(&[word(&m, "x t x^-1 t")])?;
    ensure!(order_all(&h)? == 8, "order is not 8");
    let inv = abelian_invariants(&h);
    ensure!(inv == AbelianInvariants::new(0, &[2, 2]), "abelianization {inv}");
    Ok(())
}

fn fiber_certificate() -> Result<()> {
    let g = parse_presentation(G)?;
    let target = quaternion_order3();
    let hom = Homomorphism::from_text(g.clone(), target.clone(), &[("t", "(1,1)"), ("a", "(-i,1)")])?;
    let cert = IsoCertificate {
        hom,
        central_word: word(&g, "t^3"),
        witnesses: vec![
            (target.parse_element("(i,0)")?, word(&g, "t a^-1")),
            (target.parse_element("(k,0)")?, word(&g, "a^-1 t")),
            (target.parse_element("(1,1)")?, word(&g, "t")),
        ],
    };
    for s in STRATEGIES {
        let r = verify_virtually_cyclic_iso(&cert, limits(s), 1000)?;
        ensure!(r.pass, "{s}: fails at {:?}", r.first_failure());
        ensure!(r.source_quotient_order == Some(24) && r.target_quotient_order == Some(24), "{s}: quotient orders {r:?}");
    }
    let wrong = Homomorphism::from_text(g, target, &[("t", "(1,1)"), ("a", "(i,1)")])?;
    let r = verify_virtually_cyclic_iso(&IsoCertificate { hom: wrong, ..cert }, limits(Strategy::Hlt), 1000)?;
    ensure!(r.first_failure() == Some("relators"), "wrong lift not rejected at the relator check");
    Ok(())
}

fn hopf_surgery() -> Result<()> {
    let d = FramedLinkDiagram::from_json(HOPF_CIRCLES)?;
    ensure!(d.components.len() == 3, "{} components", d.components.len());
    let g = surgery_group(&d)?;
    ensure!(order_all(&g)? == 8, "order is not 8");
    let inv = abelian_invariants(&g);
    ensure!(inv == AbelianInvariants::new(0, &[2, 2]), "H1 = {inv}");
    ensure!(surgery_h1(&d.linking_matrix()?)? == inv, "linking matrix disagrees");
    Ok(())
}

fn twist_spun_meridian() -> Result<()> {
    for n in 1..=6 {
        let g = twist_spun_trefoil(n)?;
        let q = g.add_relators(&[word(&g, "t")])?;
        ensure!(order_all(&q)? == 1, "G_{n}/<<t>> is not trivial");
    }
    Ok(())
}

fn abelian_invariant_values() -> Result<()> {
    for n in 1..=5 {
        let inv = abelian_invariants(&twist_spun_trefoil(n)?);
        ensure!(inv == AbelianInvariants::new(1, &[]), "G_{n}: {inv}");
    }
    let inv = abelian_invariants(&parse_presentation(Q8)?);
    ensure!(inv == AbelianInvariants::new(0, &[2, 2]), "Q8: {inv}");
    Ok(())
}

fn matrix_suite() -> Result<()> {
    let (a, b) = (matrix_a(), matrix_b());
    let target = RationalMatrix::from_ints(&[&[1, 1], &[1, 2]]);
    ensure!(&a * &a == target, "A^2 = {}", &a * &a);
    ensure!(&b * &b == target, "B^2 = {}", &b * &b);
    let binv = b.inverse().ok_or_else(|| anyhow!("B is singular"))?;
    ensure!(&binv * &a == RationalMatrix::identity(2).scale(&-BigRational::one()), "B^-1 A = {}", &binv * &a);
    ensure!(isotopy_family().eval(&BigRational::zero()) == matrix_phi(), "phi_0 differs from Phi");
    let block = isotopy_family().block(2).det();
    let expected = -&Poly::new(&[1, -1, 1]);
    ensure!(block == expected, "upper block determinant {block}");
    ensure!(block.discriminant() == Some(BigInt::from(-3)), "discriminant {:?}", block.discriminant());
    let report = verify_matrix_identities();
    ensure!(report.pass(), "identity report: {:?}", report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    Ok(())
}

fn knot_fixtures() -> Result<Vec<(String, FramedLinkDiagram)>> {
    ["trefoil_right", "trefoil_left", "trefoil_gauss", "figure_eight", "cinquefoil", "unknot_zero"]
        .iter()
        .map(|n| Ok((n.to_string(), FramedLinkDiagram::load(&fixture(&format!("diagrams/{n}.json")))?)))
        .collect()
}

fn completing_fixtures() -> Result<Vec<(String, Presentation, Vec<Word>)>> {
    let mut out = Vec::new();
    for text in [
        Q8,
        "< t, a | t^3 = a^3, a t a = t a t, t^3 >",
        "< a, b | a^2, b^3, a b a b a b a b a b >",
        "< a, b | a^3, b^3, a b a b a b, a^-1 b a^-1 b a^-1 b >",
        "< x, y | x^2, y^3, x y x y x y x y >",
        "< a | a^12 >",
    ] {
        let p = parse_presentation(text)?;
        out.push((text.to_string(), p.clone(), vec![]));
        let first = Word::gen(&p.generators()[0]);
        out.push((format!("{text} mod <first generator>"), p, vec![first]));
    }
    for name in ["hopf_circles_q8", "two_linked_twice", "trefoil_left", "trefoil_gauss"] {
        let d = FramedLinkDiagram::load(&fixture(&format!("diagrams/{name}.json")))?;
        out.push((name.to_string(), surgery_group(&d)?, vec![]));
    }
    for n in 1..=4 {
        for m in 1..=6 {
            let g = twist_spun_trefoil(n)?;
            let t = Word::power(g.generator("t").unwrap(), m);
            out.push((format!("G_{n}/<<t^{m}>>"), g.add_relators(&[t])?, vec![]));
        }
    }
    Ok(out)
}

fn deterministic_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check_snf(m: &IntegerMatrix) -> Result<(), TestCaseError> {
    let snf = smith_normal_form(m);
    let d = &snf.diagonal;
    for w in d.windows(2) {
        let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        prop_assert!(divides, "{} does not divide {}", w[0], w[1]);
    }
    prop_assert!(d.iter().all(|x| !x.is_negative()));
    let back = snf.left.mul(m).unwrap().mul(&snf.right).unwrap();
    prop_assert_eq!(back, snf.diagonal_matrix());
    for u in [&snf.left, &snf.right] {
        prop_assert_eq!(u.determinant().map(|x| x.abs()), Some(BigInt::one()));
    }
    // d_1 is the gcd of all entries.
    let g = m.to_rows().into_iter().flatten().fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    prop_assert_eq!(d.first().cloned().unwrap_or_default(), g);
    if m.is_square() {
        let det = m.determinant().unwrap().abs();
        let prod = d.iter().fold(BigInt::one(), |acc, x| acc * x);
        prop_assert_eq!(det, prod);
    }
    Ok(())
}

fn is_freely_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1].inverted())
}

fn property_suites() -> Result<()> {
    for (name, p, sub) in completing_fixtures()? {
        let idx: Vec<_> = STRATEGIES
            .iter()
            .map(|&s| enumerate(&p, &sub, limits(s)).map(|e| e.index()))
            .collect::<Result<_, _>>()?;
        ensure!(idx[0].is_some() && idx[0] == idx[1], "{name}: {idx:?}");
    }

    let matrices = (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r));
    deterministic_runner(100)
        .run(&matrices, |rows| check_snf(&IntegerMatrix::from_rows(&rows).unwrap()))
        .map_err(|e| anyhow!("SNF: {e}"))?;

    let gens: Vec<Generator> = ["a", "b", "c"].iter().map(|n| Generator::new(n).unwrap()).collect();
    let letters = prop::collection::vec((0usize..3, any::<bool>()), 0..40);
    deterministic_runner(1000)
        .run(&letters, |raw| {
            let w = free_reduce(raw.iter().map(|&(g, inv)| Letter::new(gens[g].clone(), inv)));
            prop_assert!(is_freely_reduced(w.letters()));
            prop_assert_eq!(free_reduce(w.letters().iter().cloned()), w.clone());
            let sum = |g: &Generator| raw.iter().filter(|(i, _)| &gens[*i] == g).map(|&(_, inv)| if inv { -1 } else { 1 }).sum::<i64>();
            for g in &gens {
                prop_assert_eq!(w.exponent_sum(g), sum(g));
            }
            Ok(())
        })
        .map_err(|e| anyhow!("free reduction: {e}"))?;

    for (name, d) in knot_fixtures()? {
        let inv = abelian_invariants(&wirtinger(&d)?);
        ensure!(inv == AbelianInvariants::new(1, &[]), "{name}: {inv}");
    }
    Ok(())
}

fn recorded_grid_stability() -> Result<()> {
    let ids = ["CS-HATX-GRID".to_string(), "CS-T4-QUOTIENT".to_string()];
    let mut outputs = Vec::new();
    for s in STRATEGIES {
        for _ in 0..2 {
            let report = run_claims(Some(&ids), &Context::new(limits(s)))?;
            ensure!(report.claims.len() == 2, "{} claims returned", report.claims.len());
            ensure!(report.exit_code() == 0, "{s}: exit code {}", report.exit_code());
            outputs.push(report.to_json_untimed());
        }
    }
    ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "outputs differ across runs or strategies");
    Ok(())
}

type Criterion = (&'static str, fn() -> Result<()>);

const CRITERIA: [Criterion; 11] = [
    ("quaternion presentation has order 8 with Q8 structure", quaternion_structure),
    ("|G/<<t^3>>| = 24", g_mod_t3),
    ("G maps onto SL(2,3) with image of order 24", sl2_3_image),
    ("Klein-bottle bundle presentation and its order-8 quotient", klein_bundle_quotient),
    ("G is certified isomorphic to Q8 x| Z", fiber_certificate),
    ("surgery on three Hopf circles gives Q8", hopf_surgery),
    ("G_n/<<t>> trivial for n = 1..6", twist_spun_meridian),
    ("abelian invariants of G_n and Q8", abelian_invariant_values),
    ("monodromy matrix identities", matrix_suite),
    ("property suites", property_suites),
    ("recorded grids byte-stable across runs and strategies", recorded_grid_stability),
];

fn main() {
    let mut failed = 0;
    std::panic::set_hook(Box::new(|_| {}));
    for (name, check) in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(anyhow!("panic: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS  {name} ({ms} ms)"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name} ({ms} ms): {e:#}");
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
