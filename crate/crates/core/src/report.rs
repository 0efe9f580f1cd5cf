//! Line-oriented report text: `key: value` lines and fenced tables, with
//! floats at 12 significant digits.

use std::fmt::Display;

/// Formats like C's `%.12g`, printing `-0` as `0`.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    const P: i32 = 12;
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let fixed = format!("{:.*}", (P - 1 - exp) as usize, v);
        let t = trim_zeros(&fixed);
        if t == "-0" { "0".into() } else { t }
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn fmt_floats(vs: &[f64]) -> String {
    let parts: Vec<String> = vs.iter().map(|&v| fmt_float(v)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn fmt_list<T: Display>(vs: &[T]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Accumulates report text in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kv(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.text.push_str(key);
        self.text.push_str(": ");
        self.text.push_str(&value.to_string());
        self.text.push('\n');
        self
    }

    pub fn float(&mut self, key: &str, value: f64) -> &mut Self {
        self.kv(key, fmt_float(value))
    }

    pub fn section(&mut self, title: &str) -> &mut Self {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        self.text.push_str("# ");
        self.text.push_str(title);
        self.text.push('\n');
        self
    }

    /// A fenced table; cells are separated by tabs.
    pub fn table(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> &mut Self {
        self.text.push_str("```");
        self.text.push_str(name);
        self.text.push('\n');
        self.text.push_str(&header.join("\t"));
        self.text.push('\n');
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            self.text.push_str(&row.join("\t"));
            self.text.push('\n');
        }
        self.text.push_str("```\n");
        self
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.25, "1.25"),
            (5.0, "5"),
            (-0.0, "0"),
            (1e-20, "1e-20"),
            (-4.19e-15, "-4.19e-15"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (999999999999.9, "1e+12"),
            (-2.5, "-2.5"),
            (f64::INFINITY, "inf"),
        ];
        for (v, want) in cases {
            assert_eq!(fmt_float(v), want, "{v:e}");
        }
    }

    #[test]
    fn report_layout() {
        let mut r = Report::new();
        r.kv("n", 5).float("gap", 0.5).section("cells");
        r.table("cells", &["id", "size"], &[vec!["0".into(), "3".into()]]);
        assert_eq!(r.as_str(), "n: 5\ngap: 0.5\n\n# cells\n```cells\nid\tsize\n0\t3\n```\n");
        assert_eq!(fmt_floats(&[1.0, 0.5]), "[1, 0.5]");
        assert_eq!(fmt_list(&[1, 2]), "[1, 2]");
    }
}
