use bbs_core::order_ideal::OrderIdeal;
use bbs_core::principal::principal_ideal;
use std::time::Instant;

fn main() {
    for mu in 2..=4usize {
        let elems: Vec<Vec<u32>> = (0..mu).map(|k| vec![k as u32]).collect();
        let o = OrderIdeal::new(1, elems).unwrap();
        let t = Instant::now();
        let (ideal, _) = principal_ideal(&o).unwrap();
        println!("univariate mu={}: gens={} in {:?}", mu, ideal.generators().len(), t.elapsed());
    }
    let o = OrderIdeal::new(2, vec![vec![0,0], vec![1,0], vec![0,1]]).unwrap();
    let t = Instant::now();
    let (ideal, _) = principal_ideal(&o).unwrap();
    println!("O={{1,x,y}}: gens={} in {:?}", ideal.generators().len(), t.elapsed());
}
