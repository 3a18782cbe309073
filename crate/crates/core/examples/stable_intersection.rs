//! Stable intersection after a certified generic translation.

use tropls::plucker::{hyperplane, stable_intersection};
use tropls::stable::{generic_translation, transversality, verify_certificate};
use tropls::{Point, Rat, Subdivision};

fn main() -> tropls::Result<()> {
    let h = |c: &[i64]| hyperplane(&c.iter().map(|&x| Rat::from_integer(x)).collect::<Vec<_>>());
    let (a, b) = (h(&[0, 0, 0])?, h(&[0, 0, 0])?);

    let on_a_ray = Point::from_integers(&[1, 0, 0]);
    println!("v = (1,0,0): {:?}", transversality(&a, &b, &on_a_ray)?);

    let cert = generic_translation(&a, &b, 7)?;
    println!("certificate {:?}, verifies {}", cert.v, verify_certificate(&a, &b, &cert)?);
    let q = stable_intersection(&a, &b.translate(&cert.v)?)?;
    println!("intersection has d = {}, f = {:?}", q.d(), Subdivision::new(&q)?.bounded_f_vector());
    Ok(())
}
