#include "bellnet/scenario.h"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bellnet {

namespace {

std::string
Num (double v)
{
  return fmt::format ("{:.17g}", v);
}

std::string
Quoted (std::string_view text)
{
  std::string out = "\"";
  for (char ch : text)
    {
      if (ch == '"' || ch == '\\')
        out.push_back ('\\');
      out.push_back (ch);
    }
  out.push_back ('"');
  return out;
}

template <class T>
T
Get (const YAML::Node &node, const std::string &key)
{
  try
    {
      return node.as<T> ();
    }
  catch (const YAML::Exception &)
    {
      throw ConfigError ("bad value for '" + key + "'");
    }
}

template <class T>
bool
Read (const YAML::Node &parent, const char *key, const std::string &path, T &out)
{
  const YAML::Node n = parent[key];
  if (!n)
    return false;
  out = Get<T> (n, path + key);
  return true;
}

void
RejectUnknown (const YAML::Node &map, std::initializer_list<std::string_view> known, const std::string &where)
{
  for (const auto &kv : map)
    {
      const auto key = kv.first.as<std::string> ();
      if (std::find (known.begin (), known.end (), key) == known.end ())
        throw ConfigError ("unknown key '" + where + key + "'");
    }
}

TeleportInputs
ParseInputs (const YAML::Node &n)
{
  TeleportInputs in;
  if (n.IsScalar ())
    {
      const auto text = n.as<std::string> ();
      const std::string_view prefix = "random(";
      std::uint64_t count = 0;
      bool ok = text.size () > prefix.size () + 1 && text.starts_with (prefix) && text.back () == ')';
      if (ok)
        {
          const char *first = text.data () + prefix.size ();
          const char *last = text.data () + text.size () - 1;
          const auto res = std::from_chars (first, last, count);
          ok = res.ec == std::errc{} && res.ptr == last && count > 0;
        }
      if (!ok)
        throw ConfigError ("teleport_inputs must be 'random(<count>)' or a list of states");
      in.randomCount = count;
      return in;
    }
  if (!n.IsSequence () || n.size () == 0)
    throw ConfigError ("teleport_inputs list is empty");
  for (const auto &item : n)
    {
      const auto v = Get<std::vector<double>> (item, "teleport_inputs[]");
      if (v.size () != 4)
        throw ConfigError ("each teleport input is [alpha_re, alpha_im, beta_re, beta_im]");
      in.explicitStates.emplace_back (Complex{v[0], v[1]}, Complex{v[2], v[3]});
    }
  return in;
}

} // namespace

bool
IsBudgetParameter (std::string_view name)
{
  static constexpr std::array<std::string_view, 7> names = {
    "loss_db", "p_miss", "n_cycles", "eta_joint", "eta_single", "t_fluor", "trial_overhead"};
  return std::find (names.begin (), names.end (), name) != names.end ();
}

std::vector<double>
SweepSpec::Points () const
{
  if (steps == 0)
    throw ConfigError ("sweep needs at least one step");
  if (!std::isfinite (start) || !std::isfinite (stop))
    throw ConfigError ("sweep bounds must be finite");
  if (steps == 1 && start != stop)
    throw ConfigError ("a one-step sweep needs start == stop");
  std::vector<double> pts (steps);
  for (unsigned i = 0; i < steps; ++i)
    pts[i] = steps == 1 ? start : start + (stop - start) * i / (steps - 1);
  if (steps > 1)
    pts.back () = stop;
  return pts;
}

SweepSpec
ParseSweep (std::string_view text)
{
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text)
    {
      if (ch == ':')
        {
          parts.push_back (cur);
          cur.clear ();
        }
      else
        cur.push_back (ch);
    }
  parts.push_back (cur);
  if (parts.size () != 4)
    throw ConfigError ("sweep must look like name:start:stop:steps");
  SweepSpec s;
  s.parameter = parts[0];
  try
    {
      std::size_t used = 0;
      s.start = std::stod (parts[1], &used);
      if (used != parts[1].size ())
        throw std::invalid_argument ("trailing");
      s.stop = std::stod (parts[2], &used);
      if (used != parts[2].size ())
        throw std::invalid_argument ("trailing");
      const long steps = std::stol (parts[3], &used);
      if (used != parts[3].size () || steps < 1)
        throw std::invalid_argument ("steps");
      s.steps = static_cast<unsigned> (steps);
    }
  catch (const std::exception &)
    {
      throw ConfigError ("bad sweep '" + std::string (text) + "'");
    }
  if (!IsBudgetParameter (s.parameter))
    throw ConfigError ("unknown sweep parameter '" + s.parameter + "'");
  return s;
}

void
SetBudgetParameter (LinkBudget &budget, std::string_view name, double value)
{
  if (name == "loss_db")
    budget.lossDb = value;
  else if (name == "p_miss")
    budget.pMiss = value;
  else if (name == "n_cycles")
    {
      if (!(value >= 1.0))
        throw ConfigError ("n_cycles must be at least 1");
      budget.nCycles = static_cast<unsigned> (std::lround (value));
    }
  else if (name == "eta_joint")
    budget.etaJoint = value;
  else if (name == "eta_single")
    budget.etaSingle = value;
  else if (name == "t_fluor")
    budget.tFluor = value;
  else if (name == "trial_overhead")
    budget.trialOverhead = value;
  else
    throw ConfigError ("unknown sweep parameter '" + std::string (name) + "'");
}

void
Scenario::Validate () const
{
  try
    {
      budget.Validate ();
      detector.Validate ();
    }
  catch (const std::invalid_argument &e)
    {
      throw ConfigError (e.what ());
    }
  if (detector.pMiss != budget.pMiss || detector.nCycles != budget.nCycles)
    throw ConfigError ("detector (p_miss, n_cycles) disagrees with budget");
  if (teleportInputs.Runs () == 0)
    throw ConfigError ("teleport_inputs is empty");
  if (targetPairs == 0)
    throw ConfigError ("target_pairs must be at least 1");
  if (maxTrials == 0)
    throw ConfigError ("max_trials must be at least 1");
  if (workers == 0)
    throw ConfigError ("workers must be at least 1");
  if (sweep)
    sweep->Points ();
}

Scenario
DefaultScenario ()
{
  return Scenario{};
}

Scenario
ParseScenario (std::string_view text)
{
  YAML::Node root;
  try
    {
      root = YAML::Load (std::string (text));
    }
  catch (const YAML::Exception &e)
    {
      throw ConfigError (std::string ("scenario is not valid YAML: ") + e.what ());
    }
  if (!root.IsMap ())
    throw ConfigError ("scenario must be a key/value map");
  RejectUnknown (root,
                 {"seed", "output_path", "budget", "detector", "teleport_inputs", "frame", "sweep",
                  "capture"},
                 "");

  Scenario sc = DefaultScenario ();
  if (!Read (root, "seed", "", sc.seed))
    throw ConfigError ("scenario must set 'seed'");
  Read (root, "output_path", "", sc.outputPath);

  bool budgetP = false, budgetN = false;
  if (const auto b = root["budget"])
    {
      RejectUnknown (b,
                     {"loss_db", "p_miss", "n_cycles", "eta_joint", "eta_single", "t_fluor",
                      "trial_overhead"},
                     "budget.");
      Read (b, "loss_db", "budget.", sc.budget.lossDb);
      budgetP = Read (b, "p_miss", "budget.", sc.budget.pMiss);
      budgetN = Read (b, "n_cycles", "budget.", sc.budget.nCycles);
      Read (b, "eta_joint", "budget.", sc.budget.etaJoint);
      Read (b, "eta_single", "budget.", sc.budget.etaSingle);
      Read (b, "t_fluor", "budget.", sc.budget.tFluor);
      Read (b, "trial_overhead", "budget.", sc.budget.trialOverhead);
    }
  bool detP = false, detN = false;
  if (const auto d = root["detector"])
    {
      RejectUnknown (d, {"p_miss", "n_cycles"}, "detector.");
      detP = Read (d, "p_miss", "detector.", sc.detector.pMiss);
      detN = Read (d, "n_cycles", "detector.", sc.detector.nCycles);
    }
  // Whichever side was given fills the other; both given must agree.
  if (budgetP && !detP)
    sc.detector.pMiss = sc.budget.pMiss;
  if (detP && !budgetP)
    sc.budget.pMiss = sc.detector.pMiss;
  if (budgetN && !detN)
    sc.detector.nCycles = sc.budget.nCycles;
  if (detN && !budgetN)
    sc.budget.nCycles = sc.detector.nCycles;

  if (const auto t = root["teleport_inputs"])
    sc.teleportInputs = ParseInputs (t);

  if (const auto f = root["frame"])
    {
      if (f.IsScalar () && f.as<std::string> () == "random")
        sc.frame.reset ();
      else
        {
          RejectUnknown (f, {"omega_m_t", "xi"}, "frame.");
          OscillatorFrame fr;
          Read (f, "omega_m_t", "frame.", fr.omegaMt);
          Read (f, "xi", "frame.", fr.xi);
          sc.frame = fr;
        }
    }

  if (const auto s = root["sweep"])
    {
      if (s.IsScalar () && s.as<std::string> () == "none")
        sc.sweep.reset ();
      else
        {
          RejectUnknown (s, {"parameter", "start", "stop", "steps"}, "sweep.");
          SweepSpec sw;
          if (!Read (s, "parameter", "sweep.", sw.parameter) || !Read (s, "start", "sweep.", sw.start)
              || !Read (s, "stop", "sweep.", sw.stop) || !Read (s, "steps", "sweep.", sw.steps))
            throw ConfigError ("sweep needs parameter, start, stop and steps");
          if (!IsBudgetParameter (sw.parameter))
            throw ConfigError ("unknown sweep parameter '" + sw.parameter + "'");
          sc.sweep = sw;
        }
    }

  if (const auto c = root["capture"])
    {
      RejectUnknown (c, {"target_pairs", "max_trials", "workers", "per_trial_csv"}, "capture.");
      Read (c, "target_pairs", "capture.", sc.targetPairs);
      Read (c, "max_trials", "capture.", sc.maxTrials);
      Read (c, "workers", "capture.", sc.workers);
      Read (c, "per_trial_csv", "capture.", sc.perTrialCsv);
    }

  sc.Validate ();
  return sc;
}

Scenario
LoadScenario (const std::string &path)
{
  std::ifstream in (path);
  if (!in)
    throw ConfigError ("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf ();
  return ParseScenario (buf.str ());
}

std::string
SerializeScenario (const Scenario &sc)
{
  std::string out;
  auto line = [&] (std::string_view s) {
    out.append (s);
    out.push_back ('\n');
  };
  line (fmt::format ("seed: {}", sc.seed));
  line ("output_path: " + Quoted (sc.outputPath));
  line ("budget:");
  line (fmt::format ("  loss_db: {}", Num (sc.budget.lossDb)));
  line (fmt::format ("  p_miss: {}", Num (sc.budget.pMiss)));
  line (fmt::format ("  n_cycles: {}", sc.budget.nCycles));
  line (fmt::format ("  eta_joint: {}", Num (sc.budget.etaJoint)));
  line (fmt::format ("  eta_single: {}", Num (sc.budget.etaSingle)));
  line (fmt::format ("  t_fluor: {}", Num (sc.budget.tFluor)));
  line (fmt::format ("  trial_overhead: {}", Num (sc.budget.trialOverhead)));
  line ("detector:");
  line (fmt::format ("  p_miss: {}", Num (sc.detector.pMiss)));
  line (fmt::format ("  n_cycles: {}", sc.detector.nCycles));
  if (sc.teleportInputs.randomCount)
    line (fmt::format ("teleport_inputs: random({})", *sc.teleportInputs.randomCount));
  else
    {
      line ("teleport_inputs:");
      for (const auto &[a, b] : sc.teleportInputs.explicitStates)
        line (fmt::format ("  - [{}, {}, {}, {}]", Num (a.real ()), Num (a.imag ()), Num (b.real ()),
                           Num (b.imag ())));
    }
  if (sc.frame)
    {
      line ("frame:");
      line (fmt::format ("  omega_m_t: {}", Num (sc.frame->omegaMt)));
      line (fmt::format ("  xi: {}", Num (sc.frame->xi)));
    }
  else
    line ("frame: random");
  if (sc.sweep)
    {
      line ("sweep:");
      line (fmt::format ("  parameter: {}", sc.sweep->parameter));
      line (fmt::format ("  start: {}", Num (sc.sweep->start)));
      line (fmt::format ("  stop: {}", Num (sc.sweep->stop)));
      line (fmt::format ("  steps: {}", sc.sweep->steps));
    }
  else
    line ("sweep: none");
  line ("capture:");
  line (fmt::format ("  target_pairs: {}", sc.targetPairs));
  line (fmt::format ("  max_trials: {}", sc.maxTrials));
  line (fmt::format ("  workers: {}", sc.workers));
  line (fmt::format ("  per_trial_csv: {}", sc.perTrialCsv ? "true" : "false"));
  return out;
}

} // namespace bellnet
