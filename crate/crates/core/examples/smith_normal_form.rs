//! Smith normal form with its unimodular transforms, and first homology of
//! surgery on a framed link from its linking matrix.

use cobord::abelian::{smith_normal_form, surgery_h1};
use cobord::matrix::IntegerMatrix;

fn main() -> anyhow::Result<()> {
    let m = IntegerMatrix::parse("-1 1 1; 1 -1 1; 1 1 -1")?;
    let snf = smith_normal_form(&m);
    println!("M =\n{m}");
    println!("diagonal: {:?}", snf.diagonal.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("L =\n{}\nR =\n{}", snf.left, snf.right);
    let back = snf.left.mul(&m)?.mul(&snf.right)?;
    assert_eq!(back, snf.diagonal_matrix());
    println!("H1 of surgery: {}", surgery_h1(&m)?);

    for text in ["0", "1", "0 2; 2 0", "2 1; 1 2"] {
        println!("{text:>10}  ->  {}", surgery_h1(&IntegerMatrix::parse(text)?)?);
    }
    Ok(())
}
