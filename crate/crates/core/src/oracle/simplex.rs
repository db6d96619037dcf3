//! Derivative-free minimization: a coarse grid followed by Nelder–Mead.

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Nelder–Mead from `start` with an axis-aligned initial simplex of edge `step`.
///
/// Stops when the simplex diameter drops below `xtol` and the spread of
/// function values below `ftol`, or after `max_iter` iterations.
pub fn nelder_mead<F>(
    f: F,
    start: &[f64],
    step: &[f64],
    xtol: f64,
    ftol: f64,
    max_iter: usize,
) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = start.len();
    assert_eq!(step.len(), n, "one step size per coordinate");
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += step[i];
        let fv = f(&v);
        simplex.push((v, fv));
    }

    let mut iterations = 0;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) <= xtol && simplex[n].1 - simplex[0].1 <= ftol {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(EXPAND);
            let fe = f(&expanded);
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < simplex[n].1 {
            let c = along(CONTRACT * REFLECT);
            let fc = f(&c);
            (c, fc)
        } else {
            let c = along(-CONTRACT);
            let fc = f(&c);
            (c, fc)
        };
        if fc < simplex[n].1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (v, fv) in simplex.iter_mut().skip(1) {
            for (x, b) in v.iter_mut().zip(&best) {
                *x = b + SHRINK * (*x - b);
            }
            *fv = f(v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (point, value) = simplex.swap_remove(0);
    Minimum {
        point,
        value,
        iterations,
    }
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, (a, _)) in simplex.iter().enumerate() {
        for (b, _) in &simplex[i + 1..] {
            let dist = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            d = d.max(dist);
        }
    }
    d
}

/// Grid cell `(i, j)` of an `n × n` grid over `[0, π/2] × [0, 2π)`.
pub fn grid_angles(n: usize, i: usize, j: usize) -> (f64, f64) {
    let theta = i as f64 * std::f64::consts::FRAC_PI_2 / (n - 1) as f64;
    let phi = j as f64 * std::f64::consts::TAU / n as f64;
    (theta, phi)
}

/// Evaluates `f` on the grid and returns the `keep` lowest cells, ties broken
/// by grid index so the result does not depend on evaluation order.
pub fn grid_best<F>(f: F, n: usize, keep: usize) -> Vec<((f64, f64), f64)>
where
    F: Fn(f64, f64) -> f64,
{
    let mut cells: Vec<(usize, (f64, f64), f64)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (t, p) = grid_angles(n, i, j);
            cells.push((i * n + j, (t, p), f(t, p)));
        }
    }
    cells.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)));
    cells
        .into_iter()
        .take(keep)
        .map(|(_, at, v)| (at, v))
        .collect()
}
