//! Series-parallel matroids from coloured trees and from series-parallel graphs.

use tropls::sptree::{colorings, Color, mu, sp_graph_build, ColoredTree, SpStep, Tree};
use tropls::tutte::{beta, is_series_parallel};

fn main() -> tropls::Result<()> {
    let ct = ColoredTree::from_black(Tree::quartet(), &[4])?;
    let m = mu(&ct, 2)?;
    println!("quartet, one black vertex: bases {:?}", m.bases().iter().map(|b| b.to_string()).collect::<Vec<_>>());

    let t = Tree::caterpillar(6)?;
    for ct in colorings(&t, 3)? {
        let m = mu(&ct, 3)?;
        let black: Vec<usize> = (0..t.num_vertices()).filter(|&v| ct.color(v) == Some(Color::Black)).collect();
        println!("black {black:?}: {} bases, beta {}", m.num_bases(), beta(&m)?);
    }

    let g = sp_graph_build(&[SpStep::Parallel(1), SpStep::Series(2), SpStep::Parallel(3)])?;
    println!("graph matroid rank {} on {} elements, series-parallel {}", g.rank(), g.n(), is_series_parallel(&g));
    Ok(())
}
