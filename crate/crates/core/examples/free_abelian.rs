//! The free abelian category on one object over Z: endomorphisms, a torsion
//! representable invisible to evaluation at Z, and what rationalization does to it.
use freydlab::coeff::{FpModule, Ring};
use freydlab::freyd::AbCat;

fn main() {
    let z = Ring::Integers;
    let cat = AbCat::point(z);
    let u = cat.universal();
    let end = cat.end(&u).unwrap().invariants();
    println!("End(|Z|) = {} ({})", end.describe(), end.factors());
    println!(
        "r_Z(|Z|) = {}",
        cat.evaluate_at_ring(&u).unwrap().describe()
    );

    for p in [2, 3] {
        let y = cat.yoneda(&FpModule::cyclic(z, p)).unwrap();
        let q = cat.base_change_to_rationals(&y).unwrap();
        println!(
            "representable at Z/{p}: zero? {}  r_Z = {}  zero after Q? {}",
            cat.is_zero_obj(&y),
            cat.evaluate_at_ring(&y).unwrap().describe(),
            cat.change_ring(Ring::Rationals).is_zero_obj(&q)
        );
    }
    let qcat = cat.change_ring(Ring::Rationals);
    let uq = cat.change_ring_obj(&u, Ring::Rationals);
    println!(
        "End(|Z| ⊗ Q) = {}",
        qcat.end(&uq).unwrap().invariants().describe()
    );
}
