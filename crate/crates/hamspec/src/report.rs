//! The unified JSON report emitted by every CLI command.
//!
//! One schema covers all commands (see `report.schema.json` at the repo
//! root). Serialization is hand-rolled so the output is byte-stable: fields
//! appear in a fixed order and every floating value is printed with exactly
//! four decimal places.

use crate::bounds::SphereTrace;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    /// Command-specific integer parameters, in a fixed per-command order.
    pub params: Vec<(String, i64)>,
    pub seed: u64,
    pub q: u32,
    pub n: u64,
    pub size: u64,
    pub distance_set: Vec<u32>,
    pub delta_size: u64,
    pub bound_value: f64,
    pub thm1_holds: bool,
    pub sphere_trace: Option<SphereTrace>,
    pub rho: Option<u64>,
    pub rainbow_subset: Option<Vec<Vec<u16>>>,
    pub chain_size: Option<u64>,
    pub flags: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut w = JsonWriter::new();
        w.begin_object();
        w.string_field("command", &self.command);
        w.key("params");
        w.begin_object();
        for (name, value) in &self.params {
            w.int_field(name, *value as i128);
        }
        w.end_object();
        w.int_field("seed", self.seed as i128);
        w.int_field("q", self.q as i128);
        w.int_field("n", self.n as i128);
        w.int_field("size", self.size as i128);
        w.key("distance_set");
        w.int_array(self.distance_set.iter().map(|&d| d as i128));
        w.int_field("delta_size", self.delta_size as i128);
        w.float_field("bound_value", self.bound_value);
        w.bool_field("thm1_holds", self.thm1_holds);
        if let Some(trace) = &self.sphere_trace {
            w.key("sphere_trace");
            write_sphere_trace(&mut w, trace);
        }
        if let Some(rho) = self.rho {
            w.int_field("rho", rho as i128);
        }
        if let Some(subset) = &self.rainbow_subset {
            w.key("rainbow_subset");
            w.begin_array();
            for word in subset {
                w.array_value();
                w.int_array(word.iter().map(|&s| s as i128));
            }
            w.end_array();
        }
        if let Some(chain_size) = self.chain_size {
            w.int_field("chain_size", chain_size as i128);
        }
        w.key("flags");
        w.begin_array();
        for flag in &self.flags {
            w.array_value();
            w.string(flag);
        }
        w.end_array();
        w.end_object();
        w.finish()
    }
}

fn write_sphere_trace(w: &mut JsonWriter, trace: &SphereTrace) {
    w.begin_object();
    w.key("center");
    w.int_array(trace.center.symbols().iter().map(|&s| s as i128));
    w.key("distance_classes");
    w.begin_array();
    for &(d, count) in &trace.distance_classes {
        w.array_value();
        w.int_array([d as i128, count as i128]);
    }
    w.end_array();
    w.int_field("chosen_r", trace.chosen_r as i128);
    w.int_field("subset_size", trace.subset_size as i128);
    w.float_field("pigeonhole_lower", trace.pigeonhole_lower);
    w.key("intersection_sizes");
    w.int_array(trace.intersection_sizes.iter().map(|&v| v as i128));
    w.int_field("d_prime", trace.d_prime as i128);
    w.int_field("rw_upper", trace.rw_upper as i128);
    w.bool_field("rw_holds", trace.rw_holds);
    w.end_object();
}

/// Minimal JSON emitter with deterministic formatting.
struct JsonWriter {
    out: String,
    needs_comma: Vec<bool>,
}

impl JsonWriter {
    fn new() -> Self {
        JsonWriter {
            out: String::new(),
            needs_comma: Vec::new(),
        }
    }

    fn finish(self) -> String {
        debug_assert!(self.needs_comma.is_empty());
        self.out
    }

    fn separate(&mut self) {
        if let Some(needs) = self.needs_comma.last_mut() {
            if *needs {
                self.out.push(',');
            }
            *needs = true;
        }
    }

    fn begin_object(&mut self) {
        self.out.push('{');
        self.needs_comma.push(false);
    }

    fn end_object(&mut self) {
        self.out.push('}');
        self.needs_comma.pop();
    }

    fn begin_array(&mut self) {
        self.out.push('[');
        self.needs_comma.push(false);
    }

    fn end_array(&mut self) {
        self.out.push(']');
        self.needs_comma.pop();
    }

    /// Starts the next element of the enclosing array.
    fn array_value(&mut self) {
        self.separate();
    }

    fn key(&mut self, name: &str) {
        self.separate();
        self.string(name);
        self.out.push(':');
    }

    fn string(&mut self, value: &str) {
        self.out.push('"');
        for c in value.chars() {
            match c {
                '"' => self.out.push_str("\\\""),
                '\\' => self.out.push_str("\\\\"),
                '\n' => self.out.push_str("\\n"),
                '\r' => self.out.push_str("\\r"),
                '\t' => self.out.push_str("\\t"),
                c if (c as u32) < 0x20 => {
                    self.out.push_str(&format!("\\u{:04x}", c as u32));
                }
                c => self.out.push(c),
            }
        }
        self.out.push('"');
    }

    fn string_field(&mut self, name: &str, value: &str) {
        self.key(name);
        self.string(value);
    }

    fn int_field(&mut self, name: &str, value: i128) {
        self.key(name);
        self.out.push_str(&value.to_string());
    }

    fn float_field(&mut self, name: &str, value: f64) {
        self.key(name);
        self.out.push_str(&format!("{value:.4}"));
    }

    fn bool_field(&mut self, name: &str, value: bool) {
        self.key(name);
        self.out.push_str(if value { "true" } else { "false" });
    }

    fn int_array<I: IntoIterator<Item = i128>>(&mut self, values: I) {
        self.begin_array();
        for v in values {
            self.separate();
            self.out.push_str(&v.to_string());
        }
        self.end_array();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_report_shape() {
        let report = Report {
            command: "analyze".into(),
            params: vec![],
            seed: 0,
            q: 2,
            n: 7,
            size: 8,
            distance_set: vec![4],
            delta_size: 1,
            bound_value: 0.31201,
            thm1_holds: true,
            ..Default::default()
        };
        let json = report.to_json();
        assert!(json.starts_with("{\"command\":\"analyze\",\"params\":{},"));
        assert!(json.contains("\"bound_value\":0.3120"));
        assert!(json.contains("\"distance_set\":[4]"));
        assert!(json.contains("\"flags\":[]"));
        assert!(json.ends_with('}'));
    }

    #[test]
    fn optional_fields_appear_in_order() {
        let report = Report {
            command: "gap".into(),
            params: vec![("n".into(), 4), ("binary".into(), 1)],
            rho: Some(2),
            rainbow_subset: Some(vec![vec![0, 0], vec![1, 0]]),
            chain_size: Some(3),
            flags: vec!["rw_tight".into()],
            ..Default::default()
        };
        let json = report.to_json();
        let rho_at = json.find("\"rho\"").unwrap();
        let subset_at = json.find("\"rainbow_subset\"").unwrap();
        let chain_at = json.find("\"chain_size\"").unwrap();
        let flags_at = json.find("\"flags\"").unwrap();
        assert!(rho_at < subset_at && subset_at < chain_at && chain_at < flags_at);
        assert!(json.contains("\"params\":{\"n\":4,\"binary\":1}"));
        assert!(json.contains("\"rainbow_subset\":[[0,0],[1,0]]"));
    }

    #[test]
    fn four_decimal_floats() {
        let report = Report {
            command: "analyze".into(),
            bound_value: 0.5,
            ..Default::default()
        };
        assert!(report.to_json().contains("\"bound_value\":0.5000"));
    }
}
