//! The projection onto degree k and its section, on the universal homology of 0 < 1.
use freydlab::coeff::Ring;
use freydlab::diagram::FinCat;
use freydlab::homology::{k_projection, universal_homology};

fn main() {
    for ring in [Ring::Integers, Ring::PrimeField(2)] {
        let g = universal_homology(FinCat::chain(2), ring, (0, 1)).unwrap();
        let kp = k_projection(&g, 0).unwrap();
        let t = kp.target();
        let back = kp.pi.obj(&kp.iota.obj(&t.universal()));
        println!(
            "over {}: pi_0 iota_0 |R| evaluates to {}, section holds: {}",
            ring.symbol(),
            t.evaluate_at_ring(&back).unwrap().describe(),
            kp.section_holds()
        );
    }
}
