//! The Nori diagram of good pairs on 0 < 1, its generators, and purity certificates.
use freydlab::coeff::Ring;
use freydlab::diagram::FinCat;
use freydlab::homology::universal_relative;

fn main() {
    let c = FinCat::chain(2);
    let all = vec![true; c.num_mors()];
    let ru = universal_relative(&c, &all, Ring::Integers, (-1, 1), 3).unwrap();
    let n = &ru.nori;
    println!(
        "{} vertices, {} edges, {} triples",
        n.quiver.vertices.len(),
        n.quiver.edges.len(),
        n.triples.len()
    );
    for &t in &ru.non_identity_triples() {
        println!("non-identity triple {}", n.triples[t].name(&n.pairs));
    }
    println!("{} Serre generators", ru.gens().len());
    for x in 0..c.num_objects() {
        let pair = n.pairs.pair_of(c.identity(x)).unwrap();
        for i in -1..=1 {
            let cert = ru.purity_certificate(pair, i).unwrap();
            println!(
                "H_{i}{} = 0: certificate verifies {}",
                n.pairs.name(pair),
                ru.verify(&cert)
            );
        }
    }
    let p10 = n.pairs.find("(1,0)").unwrap();
    println!(
        "H_0(1,0) zero? {}",
        ru.is_zero(&ru.h(p10, 0).unwrap()).label()
    );
}
