#include "sf5/reports.hpp"

#include <numbers>

namespace sf5 {

json to_json(GroupElement x) { return json::array({x.i, x.j}); }

json to_json(const Subgroup& h, i64 group_order) {
  json gens = json::array();
  for (auto x : h.generators) gens.push_back(to_json(x));
  return {{"order", h.order()}, {"index", group_order / h.order()}, {"generators", gens}};
}

json to_json(const S3Point& p) {
  return json::array({p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()});
}

json to_json(const SpherePoint& p) {
  json out = json::array();
  for (const auto& c : p.z) {
    out.push_back(c.real());
    out.push_back(c.imag());
  }
  return out;
}

json to_json(const IsotropyDescriptor& iso) {
  return {{"torus_rank", iso.torus_rank}, {"finite_part", iso.finite_part}};
}

namespace {

json instance_json(const HarnessInstance& inst) {
  json w = nullptr;
  if (inst.witness) w = {{"m", inst.witness->m}, {"n", inst.witness->n}, {"r", inst.witness->r}};
  return {{"m", inst.m}, {"n", inst.n}, {"r", inst.r}, {"witness", w}};
}

json support_json(Support s) {
  json out = json::array();
  for (int j : support_members(s)) out.push_back(j + 1);
  return out;
}

}  // namespace

json to_json(const HarnessReport& report) {
  json instances = json::array(), counter = json::array();
  for (const auto& inst : report.instances) instances.push_back(instance_json(inst));
  for (const auto& inst : report.counterexamples) counter.push_back(instance_json(inst));
  return {{"order_cap", report.order_cap},
          {"presentations", report.presentations},
          {"noncyclic", report.noncyclic},
          {"hypotheses_hold", report.hypotheses_hold},
          {"spherical_confirmed", report.spherical_confirmed},
          {"isomorphism_classes", report.isomorphism_classes},
          {"instances", instances},
          {"counterexamples", counter},
          {"passed", report.passed()}};
}

json to_json(const ExtentEstimate& e, const LensSpace& lens) {
  json config = json::array();
  for (const auto& p : e.configuration.points) config.push_back(to_json(p));
  const auto& s = e.optimizer_stats;
  return {{"space", {{"n", lens.n()}, {"k", lens.k()}, {"l", lens.l()}}},
          {"q", e.q},
          {"lower_bound", e.lower_bound},
          {"upper_bound", e.upper_bound},
          {"margin_to_pi_over_3", std::numbers::pi / 3 - e.upper_bound},
          {"configuration", config},
          {"optimizer_stats",
           {{"restarts", s.restarts},
            {"structured_seeds", s.structured_seeds},
            {"iterations", s.iterations},
            {"seed", s.seed},
            {"best_start", s.best_start}}}};
}

json to_json(const ScanTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"n", r.n}, {"bound", r.bound}, {"verdict", r.verdict}, {"margin", r.margin}});
  return {{"q", table.q}, {"rows", rows}, {"holds", table.holds}};
}

json group_report(const MetacyclicPresentation& g) {
  const auto spherical = is_spherical_5_space_group(g);
  json witness = nullptr;
  if (spherical.witness)
    witness = {{"m", spherical.witness->m}, {"n", spherical.witness->n}, {"r", spherical.witness->r}};
  const auto centers = center_and_semicenter(g);
  json semis = json::array();
  for (const auto& h : centers.semicenters) semis.push_back(to_json(h, g.order()));
  const auto pq = pq_conditions(g);
  return {{"m", g.m()},
          {"n", g.n()},
          {"r", g.r()},
          {"order", g.order()},
          {"burnside_normalized", g.burnside_normalized()},
          {"cyclic", is_cyclic(g)},
          {"spherical", {{"verdict", spherical.verdict}, {"witness", witness}}},
          {"center", to_json(centers.center, g.order())},
          {"semicenters", semis},
          {"predicates",
           {{"c3p", condition_3p(g)},
            {"c2p", pq.cond_2p},
            {"sylow_cyclic", pq.sylow_cyclic},
            {"index3_normal_cyclic", has_index3_normal_cyclic(g)}}},
          {"abelianization", abelianization(g)}};
}

json rep_report(const LinearSpaceForm& rep, i64 c, const SamplerParams& sampler) {
  const auto& p = rep.presentation();
  const auto verdict = is_free_representation(rep);
  json out{{"parameters", {{"m", p.m()}, {"n", p.n()}, {"r", p.r()}, {"c", c}}},
           {"relations_verified", true},
           {"free", verdict.free},
           {"order", rep.order()},
           {"volume", kSphere5Volume / static_cast<double>(rep.order())}};
  if (!verdict.free) {
    out["witness"] = to_json(*verdict.witness);
    out["min_injrad"] = nullptr;
    out["max_injrad"] = nullptr;
    out["collapse_ratio"] = nullptr;
    return out;
  }
  const auto geo = injectivity_geometry(rep, sampler);
  out["witness"] = nullptr;
  out["min_injrad"] = geo.min_injrad;
  out["max_injrad"] = {{"value", geo.max_injrad_estimate},
                       {"point", to_json(geo.max_point)},
                       {"restarts", geo.restarts},
                       {"best_restart", geo.best_restart},
                       {"evaluations", geo.evaluations}};
  out["collapse_ratio"] = geo.collapse_ratio;
  return out;
}

json torus_report(const WeightMatrix& w) {
  json rows = json::array();
  for (const auto& r : w.rows()) rows.push_back(r);
  json out{{"k", w.k()}, {"W", rows}, {"effective", w.effective()}};
  if (!w.effective()) {
    out["kernel_witness"] = w.kernel_witness();
    return out;
  }
  const auto cls = classify_action(w);
  json strata = json::array();
  for (const auto& s : cls.strata)
    strata.push_back({{"support", support_json(s.support)},
                      {"torus_rank", s.isotropy.torus_rank},
                      {"finite_part", s.isotropy.finite_part},
                      {"orbit_dim", s.orbit_dimension},
                      {"principal", s.principal},
                      {"single_orbit", s.single_orbit}});
  json merged = json::array();
  for (const auto& group : cls.merged) {
    json supports = json::array();
    for (Support s : group) supports.push_back(support_json(s));
    merged.push_back(supports);
  }
  out["principal_isotropy"] = to_json(cls.principal_isotropy);
  out["strata"] = strata;
  out["merged_strata"] = merged;
  out["singular_orbits"] = cls.singular_orbits;
  out["flags"] = {{"free", cls.free}, {"pseudo_free", cls.pseudo_free}, {"fixed_point_free", cls.fixed_point_free}};
  if (w.k() == 2 && cls.fixed_point_free) {
    const auto fss = fixed_set_sum_check(w);
    json terms = json::array();
    for (const auto& t : fss.terms) {
      json cols = json::array();
      for (int j : t.annihilated_columns) cols.push_back(j + 1);
      terms.push_back({{"annihilated_columns", cols}, {"r", t.fixed_dimension}, {"r_plus_1", t.contribution}});
    }
    out["fixed_set_sum"] = {{"lhs", fss.lhs}, {"sum", fss.sum}, {"terms", terms}, {"holds", fss.holds}};
  } else {
    out["fixed_set_sum"] = nullptr;
  }
  return out;
}

}  // namespace sf5
