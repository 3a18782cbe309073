//! Tutte polynomials and the decomposition over interior faces of a subdivision.

use tropls::sptree::{tree_space, Tree, WeightedTree};
use tropls::tutte::{beta, tutte, tutte_decomposition_check};
use tropls::{Matroid, Subdivision};

fn main() -> tropls::Result<()> {
    let k4 = Matroid::graphical(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    println!("T(K4) = {}", tutte(&k4)?.render("z", "w"));
    println!("beta(K4) = {}", beta(&k4)?);

    let p = tree_space(&WeightedTree::unit(Tree::caterpillar(6)?), 3)?;
    let sd = Subdivision::new(&p)?;
    let (zero, residual) = tutte_decomposition_check(&Matroid::uniform(3, 6), &sd.interior_with_dims())?;
    println!("decomposition of U(3,6) closes: {zero}, residual {}", residual.render("z", "w"));
    Ok(())
}
