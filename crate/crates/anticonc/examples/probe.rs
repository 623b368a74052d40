// probe: find instance shapes maximizing exact-Q / rhs
use anticonc::bounds::optimize_threshold;
use anticonc::measures::{symmetrize, CoefficientVector, FiniteDiscreteMeasure};
use anticonc::quad::QuadratureSpec;
use anticonc::rng::Stream;

fn main() {
    let quad = QuadratureSpec::default();
    let mut s = Stream::new(0xF8E5_0006);
    let mut top: Vec<(f64, String)> = Vec::new();
    for _ in 0..3000 {
        // replicate the random_soundness_instance generator
        let m = 2 + s.next_index(3);
        let n_max = match m { 2 => 12, 3 => 8, _ => 6 };
        let n = 2 + s.next_index(n_max - 1);
        let lattice = s.next_f64() < 0.5;
        let x_atoms: Vec<(f64,f64)> = if lattice {
            loop {
                let mut positions: Vec<i64> = Vec::new();
                while positions.len() < m {
                    let v = s.next_index(9) as i64 - 4;
                    if !positions.contains(&v) { positions.push(v); }
                }
                let mut atoms: Vec<(f64, f64)> = positions.iter().map(|&v| (v as f64, s.uniform(0.1, 1.0))).collect();
                atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                let total: f64 = atoms.iter().map(|(_, p)| p).sum();
                for a in atoms.iter_mut() { a.1 /= total; }
                if atoms.iter().any(|(x, _)| *x != 0.0) { break atoms; }
            }
        } else {
            loop {
                let k = m;
                let mut atoms: Vec<(f64, f64)> = (0..k).map(|_| (s.uniform(-2.5, 2.5), s.uniform(0.1, 1.0))).collect();
                atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                if !atoms.windows(2).all(|w| (w[1].0 - w[0].0).abs() > 1e-6) { continue; }
                let total: f64 = atoms.iter().map(|(_, p)| p).sum();
                for a in atoms.iter_mut() { a.1 /= total; }
                break atoms;
            }
        };
        let coeffs: Vec<f64> = if lattice {
            (0..n).map(|_| (1 + s.next_index(4)) as f64 * if s.next_f64() < 0.5 { -1.0 } else { 1.0 }).collect()
        } else {
            (0..n).map(|_| { let mut v = 0.0_f64; while v.abs() < 0.05 { v = s.uniform(-2.0, 2.0); } v }).collect()
        };
        let grid3 = [0.5, 1.0, 2.0];
        let tau = grid3[s.next_index(3)];
        let eps = grid3[s.next_index(3)];

        // exact Q by enumeration
        let mut sums: Vec<(f64, f64)> = vec![(0.0, 1.0)];
        for &c in &coeffs {
            let mut next: Vec<(f64, f64)> = Vec::with_capacity(sums.len() * x_atoms.len());
            for &(sv, sp) in &sums { for &(x, p) in &x_atoms { next.push((sv + c * x, sp * p)); } }
            next.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            sums.clear();
            for (v, p) in next {
                match sums.last_mut() { Some((lv, lp)) if (v - *lv).abs() <= 1e-12 => *lp += p, _ => sums.push((v, p)) }
            }
        }
        let mut q = 0.0_f64; let mut j = 0usize;
        for i in 0..sums.len() {
            if j < i { j = i; }
            while j + 1 < sums.len() && sums[j + 1].0 <= sums[i].0 + tau { j += 1; }
            let mass: f64 = sums[i..=j].iter().map(|(_, p)| p).sum();
            q = q.max(mass);
        }

        let a = CoefficientVector::from_scalars(&coeffs).unwrap();
        let x = FiniteDiscreteMeasure::from_scalar_atoms(&x_atoms).unwrap();
        let g = symmetrize(&x).unwrap();
        let mut grid: Vec<f64> = g.scalar_atoms().unwrap().iter().map(|(z, _)| z.abs()).filter(|z| *z > 1e-9).collect();
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
        let rhs = optimize_threshold(&a, &g, eps, tau, &grid, &quad).unwrap().best.rhs;
        let ratio = q / rhs;
        top.push((ratio, format!("m={m} n={n} lat={lattice} tau={tau} eps={eps} x={x_atoms:?} a={coeffs:?} q={q:.4} rhs={rhs:.4}")));
    }
    top.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    for (r, desc) in top.iter().take(12) { println!("{r:.4}  {desc}"); }
}
