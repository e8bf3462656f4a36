use galmass::padic::*;
fn main() {
    let t = std::time::Instant::now();
    let inv = enumerate_extensions(3, 1, 3, DEFAULT_TUPLE_BUDGET).unwrap();
    println!("enumerated {} classes in {:?} (tuples {})", inv.extensions.len(), t.elapsed(), inv.tuple_count);
    for x in &inv.extensions { println!("  {}: d={} aut={}", x.label, x.d, x.aut); }
    let s = serre_mass_check(&inv);
    println!("serre: {} = {} ok={}", s.lhs, s.rhs, s.ok);
    let cat = Catalog::in_memory();
    let t2 = std::time::Instant::now();
    let b = bhargava_check(&cat, 3, 3).unwrap();
    println!("bhargava(3,3): {} = {} ok={} in {:?}", b.lhs, b.rhs, b.ok, t2.elapsed());
    let h = wild_hilb_mass(&cat, 3, 3).unwrap();
    println!("hilb(3,3): {} = {} ok={}", h.lhs, h.rhs, h.ok);
}
