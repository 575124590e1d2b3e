#include "tvd/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tvd {

using nlohmann::json;

json to_json(const SpectrumReport& rep) {
    json groups = json::array();
    for (const auto& g : rep.groups) {
        groups.push_back({{"t", rep.t},
                          {"m", rep.m},
                          {"sector", sector_tag_name(g.tag)},
                          {"eigenvalue", g.value},
                          {"multiplicity", g.multiplicity}});
    }
    return json{{"t", rep.t},
                {"m", rep.m},
                {"operator", rep.op_name},
                {"dimension", rep.total_multiplicity()},
                {"spectrum", groups}};
}

std::string to_csv(const SpectrumReport& rep) {
    std::ostringstream out;
    out << "t,m,sector,eigenvalue,multiplicity\n";
    out.precision(17);
    for (const auto& g : rep.groups) {
        out << rep.t << "," << rep.m << "," << sector_tag_name(g.tag) << "," << g.value << ","
            << g.multiplicity << "\n";
    }
    return out.str();
}

json to_json(const ConvergenceCertificate& cert) {
    return json{{"t", cert.t},
                {"m", cert.m},
                {"epsilon", cert.epsilon},
                {"k", cert.k},
                {"lambda", cert.lambda},
                {"closed_form_bound", cert.closed_form_bound},
                {"empirical_bound", cert.empirical_bound},
                {"method", cert.method},
                {"seed", cert.seed}};
}

json to_json(const SchemeSample& sample) {
    json tv = json::array();
    for (const auto& [h, f] : sample.transvections) {
        tv.push_back({{"h", h}, {"f", f}});
    }
    return json{{"pauli", sample.pauli}, {"transvections", tv}};
}

json to_json(const SupportGrowth& growth) {
    json j{{"m", growth.m},
           {"k", growth.k},
           {"samples", growth.samples},
           {"distinct", growth.distinct},
           {"birthday_estimate", growth.birthday_estimate},
           {"naive_size", growth.naive_size}};
    if (growth.group_order) {
        j["group_order"] = *growth.group_order;
    }
    return j;
}

json to_json(const SectorReport& rep) {
    return json{{"sector", sector_tag_name(rep.sector)},
                {"m", rep.m},
                {"dim", rep.dim},
                {"split_identity_ok", rep.split_identity_ok},
                {"permutation_relations_ok", rep.permutation_relations_ok},
                {"top_eigenvalue", rep.top_eigenvalue},
                {"second_eigenvalue", rep.second_eigenvalue},
                {"claimed_second_bound", rep.claimed_second_bound},
                {"second_below_claimed", rep.second_below_claimed},
                {"t1_spectral_form_ok", rep.t1_spectral_form_ok},
                {"t1_multiplicities_ok", rep.t1_multiplicities_ok},
                {"t1_values", rep.t1_singular_or_eigen},
                {"top_eigvec_residual", rep.top_eigvec_residual},
                {"ett_plus_wcs_residual", rep.ett_plus_wcs_residual}};
}

json to_json(const VerificationReport& rep) {
    json subspaces = json::array();
    for (const auto& s : rep.subspaces) {
        subspaces.push_back({{"label", subspace_label_name(s.label)},
                             {"m", rep.m},
                             {"dim", s.dim},
                             {"invariance_residual", s.invariance_residual},
                             {"eigenvalue_tag", s.gt_eigenvalues},
                             {"gt_block_residual", s.gt_block_residual},
                             {"orthogonality_max", s.orthogonality_max}});
    }
    json wentries = json::array();
    for (const auto& e : rep.wmap.entries) {
        wentries.push_back({{"label", subspace_label_name(e.label)},
                            {"source_dim", e.source_dim},
                            {"image_rank", e.image_rank},
                            {"invariance_residual", e.invariance_residual},
                            {"cs_overlap", e.cs_overlap},
                            {"sym_overlap", e.sym_overlap}});
    }
    json j{{"m", rep.m},
           {"subspaces", subspaces},
           {"sym_span_dim", rep.sym_span_dim},
           {"nc_dims_sum", rep.nc_dims_sum},
           {"dimension_accounting_ok", rep.dimension_accounting_ok},
           {"intertwiners",
            {{"d_to_nc", rep.d_to_nc_residual},
             {"d_to_c", rep.d_to_c_residual},
             {"k_v12", rep.k_v12_residual}}},
           {"gram_ok", rep.gram_ok},
           {"null_eigenspace_ok", rep.null_eigenspace_ok},
           {"inner_products",
            {{"inner11", rep.inner.inner11_err},
             {"ps", rep.inner.inner_ps_err},
             {"pw", rep.inner.inner_pw_err},
             {"c_sector", rep.inner.inner_c_err}}},
           {"w_map",
            {{"w_pcs_zero", rep.wmap.w_pcs_zero_exact},
             {"w_commutes_gt", rep.wmap.w_commutes_gt_exact},
             {"anticommute", rep.wmap.anticommute_exact},
             {"images", wentries}}},
           {"pass", rep.pass()}};
    if (rep.negative_control_residual) {
        j["negative_control_residual"] = *rep.negative_control_residual;
    }
    return j;
}

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::cout << contents;
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp + " for writing");
        }
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace tvd
