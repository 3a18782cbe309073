//! Matroid basics: graphic matroids, duals, minors, components and flats.

use tropls::{Matroid, Subset};

fn main() -> tropls::Result<()> {
    let triangle_with_pendant = Matroid::graphical(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])?;
    let m = &triangle_with_pendant;
    println!("rank {} on {} elements, {} bases", m.rank(), m.n(), m.num_bases());
    println!("coloops {}, components {}", m.coloops(), m.num_components());
    println!("dual loops {}", m.dual().loops());
    let minor = m.minor(Subset::of(&[1]), Subset::of(&[4]))?;
    println!("delete 1, contract 4: rank {}, {} bases", minor.rank(), minor.num_bases());
    println!("good flats of U(2,4): {}", Matroid::uniform(2, 4).good_flats().len());
    Ok(())
}
