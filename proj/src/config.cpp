#include "carlfwm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace carlfwm {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"species", {"name", "mass_kg"}},
      {"transition10", {"wavelength_m", "einstein_a_per_s", "dipole_cm"}},
      {"transition21", {"wavelength_m", "einstein_a_per_s", "dipole_cm"}},
      {"transition32", {"wavelength_m", "einstein_a_per_s", "dipole_cm"}},
      {"transition30", {"wavelength_m", "einstein_a_per_s", "dipole_cm"}},
      {"pump1", {"wavelength_m", "detuning_rad_s", "rabi_frequency_rad_s"}},
      {"pump2", {"wavelength_m", "detuning_rad_s", "rabi_frequency_rad_s"}},
      {"pump3", {"wavelength_m", "detuning_rad_s", "rabi_frequency_rad_s"}},
      {"cavity", {"length_m", "mirror_transmission"}},
      {"sample", {"atom_count", "length_m", "radius_m", "temperature_K", "density_m3"}},
      {"probe", {"wavelength_m"}},
      {"run",
       {"n_particles", "sigma_bar", "kappa_bar", "a0", "t_end", "dt", "sample_every", "seed",
        "symmetrize_momenta"}},
      {"manifest", {"tool_version", "created_utc", "command", "flag_overrides"}},
  };
  return table;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename Range>
std::string nearest(const std::string& word, const Range& candidates) {
  std::string best;
  std::size_t best_distance = std::string::npos;
  for (const auto& candidate : candidates) {
    const std::size_t d = edit_distance(word, candidate);
    if (d < best_distance) {
      best_distance = d;
      best = candidate;
    }
  }
  return best;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
  std::ostringstream msg;
  msg << origin;
  if (line > 0) msg << ":" << line;
  msg << ": " << message;
  throw ConfigError(msg.str());
}

Document parse_document(const std::string& text, const std::string& origin) {
  Document doc;
  Section* current = nullptr;
  std::string current_name;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, line_no, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      const auto& known = known_keys();
      if (!known.count(name)) {
        std::vector<std::string> names;
        for (const auto& [section_name, keys] : known) names.push_back(section_name);
        fail(origin, line_no,
             "unknown section [" + name + "]; nearest valid section is [" + nearest(name, names) + "]");
      }
      if (doc.count(name)) fail(origin, line_no, "duplicate section [" + name + "]");
      current = &doc[name];
      current_name = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected key = value");
    if (!current) fail(origin, line_no, "key before any [section]");

    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");
    if (value.empty()) fail(origin, line_no, "empty value for key '" + key + "'");

    const auto& valid = known_keys().at(current_name);
    if (std::find(valid.begin(), valid.end(), key) == valid.end()) {
      fail(origin, line_no,
           "unknown key '" + key + "' in section [" + current_name + "]; nearest valid key is '" +
               nearest(key, valid) + "'");
    }
    if (current->count(key)) fail(origin, line_no, "duplicate key '" + key + "'");
    (*current)[key] = {value, line_no};
  }
  return doc;
}

double parse_double(const std::string& origin, const Entry& entry, const std::string& key) {
  const char* begin = entry.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    fail(origin, entry.line, "malformed number '" + entry.value + "' for key '" + key + "'");
  }
  return v;
}

long long parse_int(const std::string& origin, const Entry& entry, const std::string& key) {
  const char* begin = entry.value.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0') {
    fail(origin, entry.line, "malformed integer '" + entry.value + "' for key '" + key + "'");
  }
  return v;
}

bool parse_bool(const std::string& origin, const Entry& entry, const std::string& key) {
  if (entry.value == "true") return true;
  if (entry.value == "false") return false;
  fail(origin, entry.line, "key '" + key + "' expects true or false, got '" + entry.value + "'");
}

class SectionReader {
 public:
  SectionReader(const std::string& origin, const Document& doc, const std::string& name)
      : origin_(origin), name_(name) {
    const auto it = doc.find(name);
    section_ = (it == doc.end()) ? nullptr : &it->second;
  }

  bool present() const { return section_ != nullptr; }

  double require_double(const std::string& key) const {
    const Entry& entry = require_entry(key);
    return parse_double(origin_, entry, key);
  }

  std::optional<double> optional_double(const std::string& key) const {
    const Entry* entry = find_entry(key);
    if (!entry) return {};
    return parse_double(origin_, *entry, key);
  }

  std::optional<long long> optional_int(const std::string& key) const {
    const Entry* entry = find_entry(key);
    if (!entry) return {};
    return parse_int(origin_, *entry, key);
  }

  std::optional<bool> optional_bool(const std::string& key) const {
    const Entry* entry = find_entry(key);
    if (!entry) return {};
    return parse_bool(origin_, *entry, key);
  }

  std::string require_string(const std::string& key) const { return require_entry(key).value; }

 private:
  const Entry* find_entry(const std::string& key) const {
    if (!section_) return nullptr;
    const auto it = section_->find(key);
    return it == section_->end() ? nullptr : &it->second;
  }

  const Entry& require_entry(const std::string& key) const {
    const Entry* entry = find_entry(key);
    if (!entry) fail(origin_, 0, "missing key '" + key + "' in section [" + name_ + "]");
    return *entry;
  }

  const std::string& origin_;
  const Section* section_;
  std::string name_;
};

Transition read_transition(const std::string& origin, const Document& doc,
                           const std::string& section, TransitionLabel label,
                           std::optional<double> fallback_wavelength) {
  SectionReader reader(origin, doc, section);
  Transition t;
  t.label = label;
  const auto wavelength = reader.optional_double("wavelength_m");
  if (wavelength) {
    t.wavelength = *wavelength;
  } else if (fallback_wavelength) {
    t.wavelength = *fallback_wavelength;
  } else {
    fail(origin, 0, "missing key 'wavelength_m' in section [" + section + "]");
  }
  t.einstein_a = reader.require_double("einstein_a_per_s");
  t.dipole_moment = reader.optional_double("dipole_cm");
  return t;
}

PumpField read_pump(const std::string& origin, const Document& doc, int index) {
  SectionReader reader(origin, doc, "pump" + std::to_string(index));
  PumpField pump;
  pump.index = index;
  pump.wavelength = reader.require_double("wavelength_m");
  pump.detuning = reader.require_double("detuning_rad_s");
  pump.rabi_frequency = reader.require_double("rabi_frequency_rad_s");
  return pump;
}

} // namespace

RunOverlay RunOverlay::merged_with(const RunOverlay& other) const {
  RunOverlay out = *this;
  if (other.n_particles) out.n_particles = other.n_particles;
  if (other.sigma_bar) out.sigma_bar = other.sigma_bar;
  if (other.kappa_bar) out.kappa_bar = other.kappa_bar;
  if (other.a0) out.a0 = other.a0;
  if (other.t_end) out.t_end = other.t_end;
  if (other.dt) out.dt = other.dt;
  if (other.sample_every) out.sample_every = other.sample_every;
  if (other.seed) out.seed = other.seed;
  if (other.symmetrize_momenta) out.symmetrize_momenta = other.symmetrize_momenta;
  return out;
}

std::vector<std::string> RunOverlay::set_fields() const {
  std::vector<std::string> fields;
  if (n_particles) fields.push_back("n_particles");
  if (sigma_bar) fields.push_back("sigma_bar");
  if (kappa_bar) fields.push_back("kappa_bar");
  if (a0) fields.push_back("a0");
  if (t_end) fields.push_back("t_end");
  if (dt) fields.push_back("dt");
  if (sample_every) fields.push_back("sample_every");
  if (seed) fields.push_back("seed");
  if (symmetrize_momenta) fields.push_back("symmetrize_momenta");
  return fields;
}

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
  const Document doc = parse_document(text, origin);
  ParsedConfig parsed;

  const std::vector<std::string> physical_sections = {
      "species", "transition10", "transition21", "transition32", "transition30",
      "pump1",   "pump2",        "pump3",        "cavity",       "sample"};
  bool any_physical = false;
  for (const auto& name : physical_sections) {
    if (doc.count(name)) any_physical = true;
  }
  if (doc.count("probe")) any_physical = true;

  if (any_physical) {
    for (const auto& name : physical_sections) {
      if (!doc.count(name)) {
        fail(origin, 0, "physical description incomplete: section [" + name + "] missing");
      }
    }

    SectionReader species_reader(origin, doc, "species");
    AtomicSpecies species;
    species.name = species_reader.require_string("name");
    species.mass = species_reader.require_double("mass_kg");

    std::array<PumpField, 3> pumps = {read_pump(origin, doc, 1), read_pump(origin, doc, 2),
                                      read_pump(origin, doc, 3)};

    // the 3-0 transition may omit its wavelength; it then sits at the
    // sum frequency of the pumps
    std::optional<double> probe_fallback;
    try {
      const double omega_sum = pumps[0].angular_frequency() + pumps[1].angular_frequency() +
                               pumps[2].angular_frequency();
      probe_fallback = wavelength_from_angular_frequency(omega_sum);
    } catch (const std::invalid_argument&) {
      probe_fallback = std::nullopt;
    }

    species.transitions = {
        read_transition(origin, doc, "transition10", TransitionLabel::T10, {}),
        read_transition(origin, doc, "transition21", TransitionLabel::T21, {}),
        read_transition(origin, doc, "transition32", TransitionLabel::T32, {}),
        read_transition(origin, doc, "transition30", TransitionLabel::T30, probe_fallback),
    };

    SectionReader cavity_reader(origin, doc, "cavity");
    Cavity cavity;
    cavity.length = cavity_reader.require_double("length_m");
    cavity.mirror_transmission = cavity_reader.require_double("mirror_transmission");

    SectionReader sample_reader(origin, doc, "sample");
    Sample sample;
    sample.atom_count = sample_reader.optional_double("atom_count").value_or(0.0);
    sample.density = sample_reader.optional_double("density_m3").value_or(0.0);
    sample.length = sample_reader.require_double("length_m");
    sample.radius = sample_reader.require_double("radius_m");
    sample.temperature = sample_reader.require_double("temperature_K");

    SectionReader probe_reader(origin, doc, "probe");
    std::optional<double> declared_probe;
    if (probe_reader.present()) declared_probe = probe_reader.optional_double("wavelength_m");

    try {
      parsed.system = PhysicalSystem::create(std::move(species), pumps, cavity, sample,
                                             declared_probe);
    } catch (const std::invalid_argument& e) {
      fail(origin, 0, e.what());
    }
  }

  SectionReader run_reader(origin, doc, "run");
  if (run_reader.present()) {
    RunOverlay& run = parsed.run;
    if (const auto v = run_reader.optional_int("n_particles")) run.n_particles = static_cast<int>(*v);
    run.sigma_bar = run_reader.optional_double("sigma_bar");
    run.kappa_bar = run_reader.optional_double("kappa_bar");
    run.a0 = run_reader.optional_double("a0");
    run.t_end = run_reader.optional_double("t_end");
    run.dt = run_reader.optional_double("dt");
    if (const auto v = run_reader.optional_int("sample_every")) run.sample_every = static_cast<int>(*v);
    if (const auto v = run_reader.optional_int("seed")) run.seed = static_cast<std::uint64_t>(*v);
    run.symmetrize_momenta = run_reader.optional_bool("symmetrize_momenta");
  }

  return parsed;
}

ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

} // namespace carlfwm
