//! Duals, minors and translations of a tree space.

use tropls::sptree::{tree_space, Tree, WeightedTree};
use tropls::{Point, Subdivision, Subset};

fn main() -> tropls::Result<()> {
    let p = tree_space(&WeightedTree::unit(Tree::caterpillar(6)?), 2)?;
    let f = |q: &tropls::PlueckerVector| Subdivision::new(q).map(|s| s.bounded_f_vector());
    println!("p          d={} f={:?}", p.d(), f(&p)?);
    let dual = p.dualize();
    println!("dual       d={} f={:?}", dual.d(), f(&dual)?);
    let minor = p.minor(Subset::of(&[1]), Subset::of(&[6]))?;
    println!("p \\ 1 / 6  d={} n={} f={:?}", minor.d(), minor.n(), f(&minor)?);
    let moved = p.translate(&Point::from_integers(&[3, 0, -1, 2, 0, 5]))?;
    println!("translated d={} f={:?}", moved.d(), f(&moved)?);
    Ok(())
}
