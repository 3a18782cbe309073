//! Coloured forests and face counts of tree spaces.

use tropls::sptree::{enumerate_forests, total_face_bound, tree_space, Tree, WeightedTree};
use tropls::subdivision::loop_free_face_count;

fn main() -> tropls::Result<()> {
    for t in Tree::all_shapes(8)? {
        let counts: Vec<usize> = (1..=4).map(|i| enumerate_forests(&t, i).len()).collect();
        println!("{:<32} forests by size {counts:?}", t.shape());
    }
    let (n, d) = (6, 3);
    let p = tree_space(&WeightedTree::unit(Tree::caterpillar(n)?), d)?;
    let bound: Vec<u64> = (1..=d).map(|i| total_face_bound(i, d, n)).collect();
    println!("faces of the tree space {:?}, bound {bound:?}", loop_free_face_count(&p)?);
    Ok(())
}
