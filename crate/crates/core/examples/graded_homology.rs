//! Universal homology on the chain 0 < 1 in degrees 0 and 1, and a concrete
//! homology theory that factors through it.
use freydlab::coeff::{FpModule, Mat, ModMap, Ring};
use freydlab::diagram::FinCat;
use freydlab::homology::{universal_homology, HomologyData};

fn main() {
    let z = Ring::Integers;
    let c = FinCat::chain(2);
    let g = universal_homology(c.clone(), z, (0, 1)).unwrap();
    for i in 0..=1 {
        for x in 0..2 {
            for y in 0..2 {
                for j in 0..=1 {
                    let m = g
                        .hom_module(&g.h(x, i).unwrap(), &g.h(y, j).unwrap())
                        .unwrap();
                    println!(
                        "Hom(H_{i}({x}), H_{j}({y})) = {}",
                        m.invariants().describe()
                    );
                }
            }
        }
    }

    let one = FpModule::free(z, 1);
    let z2 = FpModule::cyclic(z, 2);
    let zero = FpModule::zero(z);
    let k = HomologyData {
        window: (0, 1),
        values: vec![
            vec![one.clone(), z2.clone()],
            vec![zero.clone(), one.clone()],
        ],
        maps: vec![
            vec![ModMap::new(one.clone(), z2, Mat::from_i64(z, &[&[1]])).unwrap()],
            vec![ModMap::zero(&zero, &one)],
        ],
    };
    println!(
        "reduction mod 2 factors through the universal homology: {}",
        g.verify_factorization(&k).unwrap()
    );
}
