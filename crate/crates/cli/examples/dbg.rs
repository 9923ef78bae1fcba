use eisenbox::series::TSeries;
use eisenbox::weierstrass;
use eisenbox::Rational;

fn rat(n: i64, d: i64) -> Rational { Rational::new(n.into(), d.into()) }
fn rat_int(n: i64) -> Rational { Rational::from_integer(n.into()) }

fn fixpoint(gp: &TSeries, fp: &TSeries, w: u32, d: usize, cap: u32) -> (TSeries, TSeries) {
    let n = fp.nvars();
    let f = fp.truncate(w);
    let g = gp.truncate(w);
    let rho = |h: &TSeries| {
        let mut out = TSeries::zero(n, h.cap());
        for (e, c) in h.terms() { if (e[n-1] as usize) < d { out.set_coefficient(e.clone(), c.clone()); } }
        out
    };
    let tau = |h: &TSeries| {
        let mut out = TSeries::zero(n, h.cap());
        for (e, c) in h.terms() {
            if e[n-1] as usize >= d { let mut k = e.clone(); k[n-1] -= d as u32; out.set_coefficient(k, c.clone()); }
        }
        out
    };
    let a = rho(&f); let b = tau(&f);
    let b_inv = b.invert_unit().unwrap();
    let mut q = TSeries::zero(n, w);
    for _ in 0..=w+1 {
        let next = b_inv.mul(&tau(&g.sub(&a.mul(&q).unwrap()).unwrap())).unwrap();
        if next == q { break; }
        q = next;
    }
    let r = rho(&g.sub(&f.mul(&q).unwrap()).unwrap());
    (q.truncate(cap), r.truncate(cap))
}

fn main() {
    let cap = 8u32;
    let mut state = 0xda3e39cb94b95bdbu64;
    let mut next = move || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
    for round in 0..50 {
        let d = (next() % 3) as usize;
        let wcap = cap + d as u32 + 1;
        let mut f = TSeries::zero(2, 40);
        f.set_coefficient(vec![0, d as u32], rat_int(1 + (next() % 3) as i64));
        let mut g = TSeries::zero(2, 40);
        for _ in 0..12 {
            let e1 = (next() % 5) as u32;
            let e2 = (next() % 5) as u32;
            if e1 + e2 <= wcap && (e1 > 0 || e2 as usize >= d) {
                let c = rat((next() % 13) as i64 - 6, 1 + (next() % 4) as i64);
                f.set_coefficient(vec![e1, e2], f.coefficient(&[e1, e2]) + c);
            }
            let d1 = (next() % 6) as u32;
            let d2 = (next() % 6) as u32;
            if d1 + d2 <= wcap {
                let c = rat((next() % 15) as i64 - 7, 1 + (next() % 5) as i64);
                g.set_coefficient(vec![d1, d2], g.coefficient(&[d1, d2]) + c);
            }
        }
        if f.coefficient(&[0, d as u32]) == rat_int(0) {
            f.set_coefficient(vec![0, d as u32], rat_int(1));
        }
        if round == 10 {
            println!("round 10: d = {d}");
            println!("f = {f}");
            // truth from very deep fixpoint
            let (qt, _rt) = fixpoint(&g, &f, 36, d, cap);
            let ft = f.truncate(wcap); let gt = g.truncate(wcap);
            let (qd, _) = weierstrass::divide(&gt, &ft, cap).unwrap();
            println!("divide == truth: {}", qd == qt);
            for e1 in 0..=8u32 {
                for e2 in 0..=8u32 {
                    if e1 + e2 <= 8 {
                        let a = qt.coefficient(&[e1, e2]);
                        let b = qd.coefficient(&[e1, e2]);
                        if a != b {
                            println!("  differ at [{e1},{e2}]: truth {a} vs divide {b}");
                        }
                    }
                }
            }
        }
    }
}
