// Nelder–Mead on R^n. Used by the gap search, where the objective is not
// differentiable at states with vanishing outcome probabilities.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) struct Options {
    pub initial_step: f64,
    pub max_evaluations: usize,
    pub f_tolerance: f64,
}

pub(crate) struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
}

pub(crate) fn minimize(f: &mut impl FnMut(&[f64]) -> f64, start: &[f64], opts: &Options) -> Minimum {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for k in 0..n {
        let mut v = start.to_vec();
        v[k] += if v[k].abs() > 1e-3 { opts.initial_step * v[k].abs().max(0.1) } else { opts.initial_step };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evaluations = n + 1;

    while evaluations < opts.max_evaluations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if (values[n] - values[0]).abs() <= opts.f_tolerance {
            break;
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n]).map(|(c, w)| c + t * (w - c)).collect()
        };

        let reflected = along(-1.0);
        let fr = f(&reflected);
        evaluations += 1;
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(&expanded);
            evaluations += 1;
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let contracted = if fr < values[n] { along(-0.5) } else { along(0.5) };
        let fc = f(&contracted);
        evaluations += 1;
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for k in 1..=n {
            let shrunk: Vec<f64> = simplex[0].iter().zip(&simplex[k]).map(|(b, x)| b + 0.5 * (x - b)).collect();
            values[k] = f(&shrunk);
            simplex[k] = shrunk;
        }
        evaluations += n;
    }

    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    Minimum { point: simplex.swap_remove(best), value: values[best] }
}
