//! Wirtinger and surgery presentations from signed Gauss codes: the fixture
//! diagrams shipped in `fixtures/diagrams`.

use std::path::Path;

use cobord::abelian::{abelian_invariants, surgery_h1};
use cobord::builders::{surgery_group, wirtinger, FramedLinkDiagram, Role};
use cobord::coset::{group_order, EnumerationLimits};

fn main() -> anyhow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/diagrams");
    let limits = EnumerationLimits::default().with_max_cosets(200_000);
    for name in ["hopf_circles_q8", "two_linked_twice", "trefoil_left", "trefoil_gauss"] {
        let d = FramedLinkDiagram::load(&dir.join(format!("{name}.json")))?;
        let g = surgery_group(&d)?;
        println!("{name}");
        println!("  link group:  {}", wirtinger(&d)?.simplify(100).presentation);
        println!("  surgery:     {}", g.simplify(100).presentation);
        println!("  H1:          {} (linking matrix: {})", abelian_invariants(&g), surgery_h1(&d.linking_matrix()?)?);
        println!("  order:       {}", group_order(&g, limits)?);
    }

    // Diagrams can also be built from braid words.
    let fig8 = FramedLinkDiagram::braid_closure(3, &[1, -2, 1, -2], Role::Surgery, &[0])?;
    println!("figure-eight code: {:?}", fig8.components[0].code);
    Ok(())
}
