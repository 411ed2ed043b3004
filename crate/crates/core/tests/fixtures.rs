use std::fs;
use std::path::{Path, PathBuf};

use cobord::abelian::{abelian_invariants, AbelianInvariants};
use cobord::builders::{kirby_pi1, surgery_group, wirtinger, FramedLinkDiagram, KirbyAlgebraicData, Role};
use cobord::claims::g2_certificate;
use cobord::coset::{group_order, EnumerationLimits};
use cobord::models::{closure_order, load_model, verify_virtually_cyclic_iso, Bounded, GroupModel, ModelFixture};
use cobord::parse::{parse_presentation, parse_word};
use cobord::presentation::Presentation;
use cobord::words::Word;

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(sub)
}

fn diagram(name: &str) -> FramedLinkDiagram {
    FramedLinkDiagram::load(&dir("diagrams").join(format!("{name}.json"))).unwrap()
}

fn order(p: &Presentation) -> Option<usize> {
    group_order(p, EnumerationLimits::default()).unwrap().finite()
}

#[test]
fn every_diagram_fixture_loads_and_round_trips() {
    let mut n = 0;
    for entry in fs::read_dir(dir("diagrams")).unwrap() {
        let path = entry.unwrap().path();
        let d = FramedLinkDiagram::load(&path).unwrap();
        d.validate().unwrap();
        assert_eq!(FramedLinkDiagram::from_json(&d.to_json()).unwrap(), d, "{}", path.display());
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn knots_have_meridian_quotient_trivial() {
    for name in ["trefoil_right", "trefoil_left", "trefoil_gauss", "figure_eight", "cinquefoil", "unknot_zero"] {
        let w = wirtinger(&diagram(name)).unwrap();
        assert_eq!(abelian_invariants(&w), AbelianInvariants::new(1, &[]), "{name}");
        let meridian = Word::gen(&w.generators()[0]);
        assert_eq!(order(&w.add_relators(&[meridian]).unwrap()), Some(1), "{name}");
    }
}

#[test]
fn gauss_and_braid_trefoils_agree() {
    let gauss = surgery_group(&diagram("trefoil_gauss")).unwrap();
    let braid = FramedLinkDiagram::braid_closure(2, &[1, 1, 1], Role::Surgery, &[1]).unwrap();
    assert_eq!(order(&gauss), Some(120));
    assert_eq!(order(&surgery_group(&braid).unwrap()), Some(120));
    assert_eq!(order(&surgery_group(&diagram("trefoil_left")).unwrap()), Some(120));
}

#[test]
fn figure_eight_wirtinger_quotients() {
    // The figure-eight group maps onto the dihedral group of order 10.
    let w = wirtinger(&diagram("figure_eight")).unwrap();
    let x = Word::gen(&w.generators()[0]);
    assert_eq!(order(&w.add_relators(&[x.pow(2)]).unwrap()), Some(10));
}

#[test]
fn two_linked_twice_matches_the_hopf_circles() {
    let a = surgery_group(&diagram("two_linked_twice")).unwrap();
    let b = surgery_group(&diagram("hopf_circles_q8")).unwrap();
    assert_eq!(order(&a), Some(8));
    assert_eq!(abelian_invariants(&a), abelian_invariants(&b));
}

#[test]
fn unlink_surgery_is_free_abelian_rank_two() {
    let g = surgery_group(&diagram("unlink_two")).unwrap();
    assert_eq!(abelian_invariants(&g), AbelianInvariants::new(2, &[]));
}

#[test]
fn model_fixtures() {
    let model = |n: &str| load_model(&dir("models").join(n)).unwrap();
    let GroupModel::FiniteTable(q8) = model("q8.json") else { panic!("q8 is a table") };
    assert_eq!(q8.order(), 8);
    assert_eq!(q8.center().len(), 2);
    let sl = model("sl2_3.json");
    assert_eq!(closure_order(&sl, &sl.generators(), 1000), Bounded::Within(24));
    let z3 = model("z3.json");
    assert_eq!(closure_order(&z3, &z3.generators(), 10), Bounded::Within(3));
    for (name, fiber, action) in [("q8_rotation.json", 8, 3), ("z3_inversion.json", 3, 2)] {
        let GroupModel::Semidirect(s) = model(name) else { panic!("{name} is a semidirect product") };
        assert_eq!((s.fiber().order(), s.action_order()), (fiber, action), "{name}");
    }
}

#[test]
fn fixture_writer_round_trips() {
    let GroupModel::FiniteTable(q8) = load_model(&dir("models").join("q8.json")).unwrap() else { unreachable!() };
    let fx = ModelFixture::from_table(&q8, None);
    let text = serde_json::to_string(&fx).unwrap();
    let back: ModelFixture = serde_json::from_str(&text).unwrap();
    let GroupModel::FiniteTable(again) = back.build(Path::new(".")).unwrap() else { unreachable!() };
    assert_eq!(again.labels(), q8.labels());
    assert!((0..8).all(|a| (0..8).all(|b| again.product(a, b) == q8.product(a, b))));
}

#[test]
fn second_certificate() {
    let r = verify_virtually_cyclic_iso(&g2_certificate(), EnumerationLimits::default(), 1000).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!((r.source_quotient_order, r.target_quotient_order), (Some(6), Some(6)));
}

#[test]
fn kirby_relations_simplify_and_transport() {
    let k = KirbyAlgebraicData::from_strs(
        &["x", "y", "t"],
        &["x^-1 y t^-1 x^-1 t", "x^-1 y x y", "t x t^-1 y^-1"],
    )
    .unwrap();
    let p = kirby_pi1(&k).unwrap();
    let s = p.simplify(100);
    assert_eq!(s.presentation.generators().len(), 2);
    assert_eq!(s.presentation.relators().len(), 2);
    assert!(s.eliminations.keys().any(|g| g.name() == "y"));
    let g = parse_presentation("< t, a | t^3 = a^3, a t a = t a t >").unwrap();
    for m in 1..=4 {
        let tm = parse_word(&format!("t^{m}"), Some(p.generators())).unwrap();
        let q = s.presentation.add_relators(&[s.transport(&tm)]).unwrap();
        let r = g.add_relators(&[parse_word(&format!("t^{m}"), Some(g.generators())).unwrap()]).unwrap();
        assert_eq!(order(&q), order(&r), "m = {m}");
        assert_eq!(order(&p.add_relators(&[tm]).unwrap()), order(&q), "m = {m}");
    }
}
