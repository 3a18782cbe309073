//! The tree space of a caterpillar and its face catalog from coloured forests.

use tropls::sptree::{fvector_formula, tree_space, tree_space_face_catalog, Tree, WeightedTree};
use tropls::Subdivision;

fn main() -> tropls::Result<()> {
    let (n, d) = (7, 3);
    let t = Tree::caterpillar(n)?;
    let p = tree_space(&WeightedTree::unit(t.clone()), d)?;
    let sd = Subdivision::new(&p)?;
    let catalog = tree_space_face_catalog(&t, d)?;
    let formula: Vec<u64> = (1..=d.min(n - d)).map(|i| fvector_formula(i, d, n)).collect();
    println!("subdivision f = {:?}", sd.bounded_f_vector());
    println!("catalog     f = {:?}", catalog.f_vector(d, n));
    println!("formula     f = {formula:?}");
    for face in catalog.faces.iter().take(4) {
        println!("  blocks {:?} black {:?}", face.forest.blocks(), face.forest.black());
    }
    Ok(())
}
