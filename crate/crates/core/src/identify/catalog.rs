use std::collections::HashSet;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AircraftSpec<T> {
    pub full_name: String,
    pub shortcut: String,
    pub actual_length_m: T,
}

impl<T: Real> AircraftSpec<T> {
    pub fn new(full_name: impl Into<String>, shortcut: impl Into<String>, actual_length_m: T) -> Self {
        Self {
            full_name: full_name.into(),
            shortcut: shortcut.into(),
            actual_length_m,
        }
    }
}

/// Fleet of reference aircraft, sorted by length (ties by shortcut).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Catalog<T> {
    entries: Vec<AircraftSpec<T>>,
}

/// Paris Air Show fleet: full name, shortcut, manufacturer length in meters.
const DEFAULT_FLEET: [(&str, &str, f64); 9] = [
    ("LockheedMartin-LM100J", "LM100J", 35.0),
    ("GULFSTREAM-G-280", "G-280", 20.0),
    ("GULFSTREAM-G-550", "G-550", 29.0),
    ("GULFSTREAM-G-650", "G-650", 30.0),
    ("Cessna-Citation CJ4", "CJ4", 16.0),
    ("Cessna-Citation M2", "CM2", 13.0),
    ("Boeing 787-8", "Bo787", 57.0),
    ("Airbus A-380", "A-380", 73.0),
    ("Airbus A-320", "A-320", 38.0),
];

#[derive(Deserialize)]
struct CsvRow {
    name: String,
    shortcut: String,
    length_m: f64,
}

impl<T: Real> Catalog<T> {
    pub fn new(entries: Vec<AircraftSpec<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("catalog is empty".into()));
        }
        let mut seen = HashSet::new();
        for e in &entries {
            if e.shortcut.is_empty() {
                return Err(Error::Config(format!(
                    "aircraft `{}` has an empty shortcut",
                    e.full_name
                )));
            }
            if !seen.insert(e.shortcut.as_str()) {
                return Err(Error::Config(format!("duplicate shortcut `{}`", e.shortcut)));
            }
            if !(e.actual_length_m.is_finite() && e.actual_length_m > T::zero()) {
                return Err(Error::Config(format!(
                    "aircraft `{}` has non-positive length {}",
                    e.shortcut, e.actual_length_m
                )));
            }
        }
        let mut entries = entries;
        entries.sort_by(|a, b| {
            a.actual_length_m
                .partial_cmp(&b.actual_length_m)
                .expect("finite lengths")
                .then_with(|| a.shortcut.cmp(&b.shortcut))
        });
        Ok(Self { entries })
    }

    /// The nine-aircraft reference fleet.
    pub fn default_fleet() -> Self {
        let entries = DEFAULT_FLEET
            .iter()
            .map(|&(name, shortcut, len)| AircraftSpec::new(name, shortcut, T::lit(len)))
            .collect();
        Self::new(entries).expect("built-in fleet is valid")
    }

    /// Reads `name,shortcut,length_m` CSV.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["name", "shortcut", "length_m"] {
            return Err(Error::Config(format!(
                "catalog header must be `name,shortcut,length_m`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut entries = Vec::new();
        for row in rdr.deserialize::<CsvRow>() {
            let row = row?;
            let len = T::from_f64(row.length_m)
                .ok_or_else(|| Error::Config(format!("length of `{}` not representable", row.shortcut)))?;
            entries.push(AircraftSpec::new(row.name, row.shortcut, len));
        }
        Self::new(entries)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(file)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "shortcut", "length_m"])
            .expect("in-memory write");
        for e in &self.entries {
            w.write_record([
                e.full_name.as_str(),
                e.shortcut.as_str(),
                &e.actual_length_m.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn entries(&self) -> &[AircraftSpec<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, shortcut: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.shortcut == shortcut)
    }

    pub fn get(&self, shortcut: &str) -> Option<&AircraftSpec<T>> {
        self.index_of(shortcut).map(|i| &self.entries[i])
    }

    pub fn shortcuts(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.iter().map(|e| e.shortcut.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_fleet_sorted_by_length() {
        let c = Catalog::<f64>::default_fleet();
        let order: Vec<_> = c.shortcuts().collect();
        assert_eq!(
            order,
            ["CM2", "CJ4", "G-280", "G-550", "G-650", "LM100J", "A-320", "Bo787", "A-380"]
        );
        assert_eq!(c.get("Bo787").unwrap().actual_length_m, 57.0);
        assert_eq!(c.get("Bo787").unwrap().full_name, "Boeing 787-8");
    }

    #[test]
    fn csv_round_trip() {
        let c = Catalog::<f64>::default_fleet();
        let back = Catalog::<f64>::from_csv_reader(c.to_csv().as_bytes()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn csv_rejections() {
        let dup = "name,shortcut,length_m\nA,X,10\nB,X,12\n";
        assert!(matches!(
            Catalog::<f64>::from_csv_reader(dup.as_bytes()),
            Err(Error::Config(_))
        ));
        let empty = "name,shortcut,length_m\n";
        assert!(matches!(
            Catalog::<f64>::from_csv_reader(empty.as_bytes()),
            Err(Error::Config(_))
        ));
        let neg = "name,shortcut,length_m\nA,X,-3\n";
        assert!(Catalog::<f64>::from_csv_reader(neg.as_bytes()).is_err());
        let header = "model,code,len\nA,X,3\n";
        assert!(Catalog::<f64>::from_csv_reader(header.as_bytes()).is_err());
        let junk = "name,shortcut,length_m\nA,X,long\n";
        assert!(matches!(
            Catalog::<f64>::from_csv_reader(junk.as_bytes()),
            Err(Error::Csv(_))
        ));
    }

    #[test]
    fn equal_lengths_tie_on_shortcut() {
        let c = Catalog::new(vec![
            AircraftSpec::new("b", "B", 10.0f32),
            AircraftSpec::new("a", "A", 10.0),
            AircraftSpec::new("c", "C", 5.0),
        ])
        .unwrap();
        assert_eq!(c.shortcuts().collect::<Vec<_>>(), ["C", "A", "B"]);
    }
}
