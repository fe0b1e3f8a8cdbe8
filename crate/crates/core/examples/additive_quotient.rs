//! Forcing additivity on the square 0 < a, b < s where s is the coproduct of a and b.
use freydlab::coeff::Ring;
use freydlab::diagram::FinCat;
use freydlab::homology::{universal_relative, CoproductRow};

fn main() {
    let c = FinCat::poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let ru = universal_relative(&c, &vec![true; c.num_mors()], Ring::Integers, (0, 0), 3).unwrap();
    let row = CoproductRow {
        summands: vec![1, 2],
        coproduct: 3,
        injections: vec![c.hom(1, 3)[0], c.hom(2, 3)[0]],
    };
    let q = ru.additive_quotient(&[row], 3).unwrap();
    let gens = q.gens().unwrap();
    println!(
        "{} generators before, {} after",
        ru.gens().len(),
        gens.len()
    );
    for l in &gens.labels[ru.gens().len()..] {
        println!("  added {l}");
    }
}
