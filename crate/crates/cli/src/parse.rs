use hbseries::identities::grid;
use hbseries::Complex64;

/// `"re"` or `"re,im"`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',').map(str::trim);
    let re = real(parts.next().unwrap_or(""))?;
    let im = match parts.next() {
        Some(p) => real(p)?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("expected \"re\" or \"re,im\", got \"{s}\""));
    }
    Ok(Complex64::new(re, im))
}

pub fn real(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("not a number: \"{s}\""))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: \"{s}\""))
    }
}

pub fn positive(s: &str) -> Result<f64, String> {
    let v = real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {s}"))
    }
}

fn decimals(s: &str) -> i32 {
    let s = s.trim();
    let mantissa = s.split(['e', 'E']).next().unwrap_or(s);
    let exp: i32 = s
        .split_once(['e', 'E'])
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let frac = mantissa.split_once('.').map_or(0, |(_, f)| f.len() as i32);
    (frac - exp).max(0)
}

/// `start:stop:step` (inclusive) or a comma list.
pub fn real_grid(s: &str) -> Result<Vec<f64>, String> {
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(format!("expected start:stop:step, got \"{s}\""));
        };
        let (a, b, h) = (real(start)?, real(stop)?, real(step)?);
        if h <= 0.0 {
            return Err(format!("step must be positive in \"{s}\""));
        }
        if b < a {
            return Err(format!("stop is below start in \"{s}\""));
        }
        let digits = decimals(start).max(decimals(stop)).max(decimals(step)) + 2;
        grid(a, b, h, digits.min(15))
    } else {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(real)
            .collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(format!("empty grid \"{s}\""));
    }
    Ok(values)
}

/// A real grid, or `;`-separated complex entries such as `"0.5,1;1,-2"`.
pub fn complex_grid(s: &str) -> Result<Vec<Complex64>, String> {
    if !s.contains(';') {
        return Ok(real_grid(s)?
            .into_iter()
            .map(|re| Complex64::new(re, 0.0))
            .collect());
    }
    let values: Vec<Complex64> = s
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(complex)
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(format!("empty grid \"{s}\""));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_values() {
        assert_eq!(complex("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert_eq!(complex("1, -2").unwrap(), Complex64::new(1.0, -2.0));
        assert!(complex("1,2,3").is_err());
        assert!(complex("a").is_err());
        assert!(complex("nan").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(real_grid("0:2:0.5").unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        let xs = real_grid("-0.8:0.8:0.2").unwrap();
        assert_eq!(xs.len(), 9);
        assert_eq!(xs[4], 0.0);
        assert_eq!(xs[1], -0.6);
        assert_eq!(real_grid("0.1:1.0:0.1").unwrap().last(), Some(&1.0));
        assert_eq!(
            real_grid("1e-3:3e-3:1e-3").unwrap(),
            vec![0.001, 0.002, 0.003]
        );
        assert!(real_grid("1:0:0.1").is_err());
        assert!(real_grid("0:1:0").is_err());
        assert!(real_grid("0:1").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(real_grid("-1, 0.5,2").unwrap(), vec![-1.0, 0.5, 2.0]);
        assert!(real_grid(",").is_err());
        assert_eq!(
            complex_grid("0.5,0.5;1;").unwrap(),
            vec![Complex64::new(0.5, 0.5), Complex64::new(1.0, 0.0)]
        );
        assert_eq!(complex_grid("1,2").unwrap().len(), 2);
    }
}
