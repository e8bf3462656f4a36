use galmass::padic::*;
fn main() {
    let t = std::time::Instant::now();
    let inv = enumerate_extensions(2, 1, 4, SLOW_TUPLE_BUDGET).unwrap();
    println!("enumerated {} classes in {:?} (tuples {})", inv.extensions.len(), t.elapsed(), inv.tuple_count);
    let s = serre_mass_check(&inv);
    println!("serre(2,1,4): {} = {} ok={}", s.lhs, s.rhs, s.ok);
    let cat = Catalog::new(SLOW_TUPLE_BUDGET, None);
    let t2 = std::time::Instant::now();
    let b = bhargava_check(&cat, 2, 4).unwrap();
    println!("bhargava(2,4): {} = {} ok={} in {:?}", b.lhs, b.rhs, b.ok, t2.elapsed());
    let h = wild_hilb_mass(&cat, 2, 4).unwrap();
    println!("hilb(2,4): {} = {} ok={} total {:?}", h.lhs, h.rhs, h.ok, t.elapsed());
}
