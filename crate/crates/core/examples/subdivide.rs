//! Facets, dual vertices and the bounded f-vector of a matroid subdivision.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropls::generate::random_stiefel;
use tropls::tutte::beta;
use tropls::Subdivision;

fn main() -> tropls::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = random_stiefel(3, 6, 5, &mut rng)?;
    let sd = Subdivision::new(&p)?;
    for f in sd.facets() {
        let m = &f.cell.matroid;
        println!("facet with {:>2} bases, beta {}, vertex {:?}", m.num_bases(), beta(m)?, f.dual_vertex);
    }
    println!("interior faces: {}", sd.interior_faces().len());
    println!("bounded f-vector: {:?}", sd.bounded_f_vector());
    Ok(())
}
