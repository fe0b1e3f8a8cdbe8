//! The almost trivial homology on 0 < 1 < 2: the axioms hold, and a corrupted
//! functoriality map is caught with the failing condition named.
use freydlab::coeff::{FpModule, Mat, ModMap, Ring};
use freydlab::diagram::{nori_diagram, pairs_category, FinCat};
use freydlab::homology::RelHomologyData;

fn main() {
    let z = Ring::Integers;
    let c = FinCat::chain(3);
    let p = pairs_category(&c, &vec![true; c.num_mors()]).unwrap();
    let n = nori_diagram(&p, (-1, 1)).unwrap();
    let a = FpModule::free(z, 1);
    let k = RelHomologyData::almost_trivial(&n, &a).unwrap();
    println!("violations: {:?}", k.check_axioms());

    let u = k.universal_from().unwrap();
    let h = u.h(p.find("(1,0)").unwrap(), 0).unwrap();
    let hom = u.quotient_hom(&h, &h, 3).unwrap();
    println!(
        "Hom(H_0(1,0), H_0(1,0)) = {} at stage {}",
        hom.module.describe(),
        hom.stage
    );

    let (s, t) = (p.find("(1,0)").unwrap(), p.find("(2,0)").unwrap());
    let m = (0..p.cat.num_mors())
        .find(|&m| p.cat.mors[m].src == s && p.cat.mors[m].dst == t)
        .unwrap();
    let mut bad = k.clone();
    bad.maps[n.gamma_edge(m, 0).unwrap()] =
        ModMap::new(a.clone(), a, Mat::from_i64(z, &[&[3]])).unwrap();
    for v in bad.check_axioms() {
        println!("corrupted: {v}");
    }
}
