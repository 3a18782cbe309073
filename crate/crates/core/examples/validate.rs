//! Check the tropical Plücker relations and print a failing relation.

use tropls::{PlueckerVector, Rat, Subset, Validity};

fn main() -> tropls::Result<()> {
    let quartet = PlueckerVector::from_fn(4, 2, |s| {
        if s == Subset::of(&[1, 2]) || s == Subset::of(&[3, 4]) {
            Rat::zero()
        } else {
            Rat::from_integer(-1)
        }
    })?;
    println!("quartet valid: {}", quartet.is_valid());

    let broken = PlueckerVector::from_fn(4, 2, |s| {
        if s == Subset::of(&[1, 2]) {
            Rat::from_integer(-1)
        } else {
            Rat::zero()
        }
    })?;
    match broken.validate() {
        Validity::Valid => println!("unexpectedly valid"),
        Validity::Invalid(w) => println!("broken vector fails: {w:?}"),
    }
    Ok(())
}
