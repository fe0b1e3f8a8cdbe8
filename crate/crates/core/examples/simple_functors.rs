//! Simple objects of Ab_Z attached to Z/p^n, checked against a direct computation
//! of Hom(Z/p^n, -)/rad in Z-modules.
use freydlab::coeff::{FpModule, Ring};
use freydlab::freyd::{functor_category_oracle, AbCat};

fn main() {
    let z = Ring::Integers;
    let cat = AbCat::point(z);
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let s = AbCat::simple_candidate(p, n);
        println!(
            "S(Z/{}): End = {}",
            p.pow(n),
            cat.end(&s).unwrap().invariants().describe()
        );
        for k in 0..4 {
            let x = if k == 0 {
                FpModule::free(z, 1)
            } else {
                FpModule::cyclic(z, p.pow(k) as i64)
            };
            let ours = cat
                .point_realization(x.clone())
                .unwrap()
                .obj(&s)
                .invariants();
            let oracle = functor_category_oracle(p, n, &x);
            println!(
                "  at {:>5}: {:>5} (oracle {})",
                x.describe(),
                ours.describe(),
                oracle.describe()
            );
        }
    }
}
