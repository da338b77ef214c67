// Direct dense formulas used as independent references. Plain loops and
// naive sums throughout; nothing here calls into the library's kernels.
#![allow(dead_code)]

use depmeter_core::{JointTable, MultiTable, TripleTable};

pub struct Dense {
    pub p: Vec<Vec<f64>>,
    pub px: Vec<f64>,
    pub py: Vec<f64>,
    /// F(j|i)
    pub fc: Vec<Vec<f64>>,
    /// F(j)
    pub fm: Vec<f64>,
}

impl Dense {
    pub fn new(p: Vec<Vec<f64>>) -> Self {
        let m = p.len();
        let n = p[0].len();
        let px: Vec<f64> = p.iter().map(|r| r.iter().sum()).collect();
        let py: Vec<f64> = (0..n).map(|j| (0..m).map(|i| p[i][j]).sum()).collect();
        let mut fc = vec![vec![0.0; n]; m];
        for i in 0..m {
            if px[i] <= 0.0 {
                continue;
            }
            let mut acc = 0.0;
            for j in 0..n {
                acc += p[i][j];
                fc[i][j] = acc / px[i];
            }
        }
        let mut fm = vec![0.0; n];
        let mut acc = 0.0;
        for j in 0..n {
            acc += py[j];
            fm[j] = acc;
        }
        Self { p, px, py, fc, fm }
    }

    pub fn of(t: &JointTable) -> Self {
        Self::new(t.to_dense())
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.py.len();
        (0..self.px.len())
            .flat_map(move |i| (0..n).map(move |j| (i, j, self.px[i] * self.py[j])))
            .filter(|&(_, _, w)| w > 0.0)
    }

    pub fn phi(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.cells().map(|(i, j, w)| f(self.fc[i][j] - self.fm[j]) * w).sum()
    }

    pub fn tau2(&self) -> f64 {
        self.phi(|t| 6.0 * t * t)
    }

    pub fn tau2_bound(&self) -> f64 {
        (0..self.py.len()).map(|j| 6.0 * self.fm[j] * (1.0 - self.fm[j]) * self.py[j]).sum()
    }

    fn power_sum(&self, a: f64) -> f64 {
        self.cells().map(|(i, j, w)| (self.fc[i][j] / self.fm[j]).powf(a) * w).sum()
    }

    fn bound_sum(&self, a: f64) -> f64 {
        (0..self.py.len())
            .filter(|&j| self.py[j] > 0.0)
            .map(|j| self.fm[j].powf(1.0 - a) * self.py[j])
            .sum()
    }

    pub fn renyi(&self, a: f64) -> f64 {
        self.power_sum(a).ln() / (a - 1.0)
    }

    pub fn renyi_bound(&self, a: f64) -> f64 {
        self.bound_sum(a).ln() / (a - 1.0)
    }

    pub fn tsallis(&self, a: f64) -> f64 {
        (self.power_sum(a) - 1.0) / (a - 1.0)
    }

    pub fn tsallis_bound(&self, a: f64) -> f64 {
        (self.bound_sum(a) - 1.0) / (a - 1.0)
    }

    pub fn limit(&self) -> f64 {
        self.cells()
            .map(|(i, j, w)| {
                let r = self.fc[i][j] / self.fm[j];
                if r > 0.0 {
                    r * r.ln() * w
                } else {
                    0.0
                }
            })
            .sum()
    }

    pub fn limit_bound(&self) -> f64 {
        (0..self.py.len())
            .filter(|&j| self.py[j] > 0.0)
            .map(|j| -self.fm[j].ln() * self.py[j])
            .sum()
    }

    pub fn mi_bits(&self) -> f64 {
        let mut s = 0.0;
        for (i, row) in self.p.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    s += p * (p / (self.px[i] * self.py[j])).log2();
                }
            }
        }
        s
    }

    pub fn bhm(&self) -> f64 {
        let mut s = 0.0;
        for (i, row) in self.p.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                s += (self.px[i] * self.py[j] * p).sqrt();
            }
        }
        1.0 - s
    }
}

fn multi_index(shape: &[usize], mut off: usize) -> Vec<usize> {
    let mut out = vec![0; shape.len()];
    for k in (0..shape.len()).rev() {
        out[k] = off % shape[k];
        off /= shape[k];
    }
    out
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Multivariate conditional and marginal cdfs by brute-force enumeration of
/// all dominated target cells, returned as a flattened [`Dense`].
pub fn dense_mv(t: &MultiTable) -> Dense {
    let ys = t.y_shape();
    let (mx, ny) = (t.x_cells(), t.y_cells());
    let probs = t.probs();
    let p: Vec<Vec<f64>> = (0..mx).map(|i| probs[i * ny..(i + 1) * ny].to_vec()).collect();
    let px: Vec<f64> = p.iter().map(|r| r.iter().sum()).collect();
    let py: Vec<f64> = (0..ny).map(|j| (0..mx).map(|i| p[i][j]).sum()).collect();
    let idx: Vec<Vec<usize>> = (0..ny).map(|j| multi_index(&ys, j)).collect();
    let mut fc = vec![vec![0.0; ny]; mx];
    let mut fm = vec![0.0; ny];
    for j in 0..ny {
        for jp in 0..ny {
            if dominated(&idx[jp], &idx[j]) {
                fm[j] += py[jp];
                for i in 0..mx {
                    if px[i] > 0.0 {
                        fc[i][j] += p[i][jp] / px[i];
                    }
                }
            }
        }
    }
    Dense { p, px, py, fc, fm }
}

/// Conditional measure and bound summed slice by slice straight from the
/// definition, with every cdf rebuilt from the raw tensor.
pub fn conditional_oracle(t: &TripleTable) -> (f64, f64) {
    let (m, n, l) = t.shape();
    let mut value = 0.0;
    let mut bound = 0.0;
    for k in 0..l {
        let pk: f64 = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| t.get(i, j, k)).sum();
        if pk <= 0.0 {
            continue;
        }
        let pik: Vec<f64> = (0..m).map(|i| (0..n).map(|j| t.get(i, j, k)).sum()).collect();
        let pjk: Vec<f64> = (0..n).map(|j| (0..m).map(|i| t.get(i, j, k)).sum()).collect();
        let fjk: Vec<f64> = (0..n).map(|j| (0..=j).map(|q| pjk[q]).sum::<f64>() / pk).collect();
        let mut inner = 0.0;
        for (i, &pi) in pik.iter().enumerate() {
            if pi <= 0.0 {
                continue;
            }
            for j in 0..n {
                let fjik: f64 = (0..=j).map(|q| t.get(i, q, k)).sum::<f64>() / pi;
                let d = fjik - fjk[j];
                inner += 6.0 * d * d * (pi / pk) * (pjk[j] / pk);
            }
        }
        value += inner * pk;
        let b: f64 = (0..n).map(|j| 6.0 * (fjk[j] - fjk[j] * fjk[j]) * pjk[j] / pk).sum();
        bound += b * pk;
    }
    (value, bound)
}

pub fn rel_or_abs(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}
