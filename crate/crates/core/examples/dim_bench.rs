use stanley::ideal::{MonomialIdeal, Quotient};
use stanley::lattice::build_lcm_lattice;
use stanley::monomial::Monomial;
use stanley::posets::{order_dimension, order_dimension_with, DimOptions};
use std::time::Instant;

fn main() {
    // all squarefree degree-3 monomials in 5 variables
    let mut gens = vec![];
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                let mut e = vec![0u64; 5];
                e[i] = 1; e[j] = 1; e[k] = 1;
                gens.push(Monomial::new(e));
            }
        }
    }
    let ideal = MonomialIdeal::from_generators(5, gens).unwrap();
    let q = Quotient::ideal(ideal).unwrap();
    let t0 = Instant::now();
    let lattice = build_lcm_lattice(&q).unwrap();
    println!("lattice: {} elements in {:?}", lattice.len(), t0.elapsed());
    assert_eq!(lattice.len(), 17);
    let poset = lattice.as_poset();
    println!("incomparable pairs: {}", poset.incomparable_pairs().len());
    let t1 = Instant::now();
    let (d, r) = order_dimension(&poset).unwrap();
    println!("dim = {} in {:?} (extensions: {})", d, t1.elapsed(), r.d());
    let t2 = Instant::now();
    let err = order_dimension_with(&poset, DimOptions { d_max: 3, node_budget: None }).unwrap_err();
    println!("refutation at d_max=3: {} in {:?}", err, t2.elapsed());
}
