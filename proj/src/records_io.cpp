#include "bbox/records_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bbox {

namespace {

using nlohmann::ordered_json;

std::string fixed(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep))
        fields.push_back(field);
    if (!line.empty() && line.back() == sep)
        fields.emplace_back();
    return fields;
}

template <typename T>
T parse_field(const std::string& text, const char* what)
{
    std::istringstream in(text);
    T v{};
    if (text.empty() || text.front() == '-' || !(in >> v) || !in.eof())
        throw ConfigError(std::string("bad ") + what + " field: " + text);
    return v;
}

ordered_json record_json(const RunRecord& r)
{
    ordered_json o;
    o["algo"] = r.algo_id;
    o["n"] = r.n;
    o["mu"] = r.mu;
    o["lambda"] = r.lambda;
    o["seed"] = r.seed;
    o["trial"] = r.trial;
    o["queries"] = r.queries;
    o["generations"] = r.generations;
    o["success"] = r.success;
    o["failure_cause"] = std::string(to_string(r.failure_cause));
    return o;
}

std::string failure_histogram(const SizeSummary& s)
{
    std::string out;
    for (const auto& [cause, count] : s.failures) {
        if (!out.empty())
            out += ';';
        out += std::string(to_string(cause)) + ':' + std::to_string(count);
    }
    return out;
}

ordered_json quantiles_json(const Quantiles& q)
{
    ordered_json o;
    o["mean"] = q.mean;
    o["median"] = q.median;
    o["p10"] = q.p10;
    o["p90"] = q.p90;
    return o;
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records)
{
    std::string out(records_csv_header);
    out += '\n';
    for (const auto& r : records) {
        if (r.algo_id.find_first_of(",\n\"") != std::string::npos)
            throw ConfigError("algorithm id cannot be written as a CSV field: " + r.algo_id);
        out += r.algo_id + ',' + std::to_string(r.n) + ',' + std::to_string(r.mu) + ',' + std::to_string(r.lambda) +
               ',' + std::to_string(r.seed) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.queries) + ',' +
               std::to_string(r.generations) + ',' + (r.success ? "1" : "0") + ',' +
               std::string(to_string(r.failure_cause)) + '\n';
    }
    return out;
}

std::string records_to_json(const std::vector<RunRecord>& records)
{
    ordered_json arr = ordered_json::array();
    for (const auto& r : records)
        arr.push_back(record_json(r));
    return arr.dump(2) + '\n';
}

std::vector<RunRecord> records_from_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != records_csv_header)
        throw ConfigError("missing or wrong CSV header");
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 10)
            throw ConfigError("expected 10 CSV fields: " + line);
        RunRecord r;
        r.algo_id = f[0];
        r.n = parse_field<std::size_t>(f[1], "n");
        r.mu = parse_field<std::size_t>(f[2], "mu");
        r.lambda = parse_field<std::size_t>(f[3], "lambda");
        r.seed = parse_field<std::uint64_t>(f[4], "seed");
        r.trial = parse_field<std::size_t>(f[5], "trial");
        r.queries = parse_field<std::uint64_t>(f[6], "queries");
        r.generations = parse_field<std::uint64_t>(f[7], "generations");
        if (f[8] != "0" && f[8] != "1")
            throw ConfigError("bad success field: " + f[8]);
        r.success = f[8] == "1";
        r.failure_cause = parse_failure_cause(f[9]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<RunRecord> records_from_json(std::string_view text)
{
    std::vector<RunRecord> records;
    try {
        const auto arr = nlohmann::json::parse(text);
        if (!arr.is_array())
            throw ConfigError("expected a JSON array of records");
        for (const auto& o : arr) {
            RunRecord r;
            r.algo_id = o.at("algo").get<std::string>();
            r.n = o.at("n").get<std::size_t>();
            r.mu = o.at("mu").get<std::size_t>();
            r.lambda = o.at("lambda").get<std::size_t>();
            r.seed = o.at("seed").get<std::uint64_t>();
            r.trial = o.at("trial").get<std::size_t>();
            r.queries = o.at("queries").get<std::uint64_t>();
            r.generations = o.at("generations").get<std::uint64_t>();
            r.success = o.at("success").get<bool>();
            r.failure_cause = parse_failure_cause(o.at("failure_cause").get<std::string>());
            records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed JSON records: ") + e.what());
    }
    return records;
}

std::string emit_records(const std::vector<RunRecord>& records, OutputFormat format)
{
    return format == OutputFormat::json ? records_to_json(records) : records_to_csv(records);
}

std::string summary_to_csv(const Summary& summary)
{
    std::string out =
        "algo,n,mu,lambda,trials,success_rate,queries_mean,queries_median,queries_p10,queries_p90,"
        "generations_mean,generations_median,generations_p10,generations_p90,failures,query_slope,"
        "generation_slope\n";
    for (const auto& a : summary.algos) {
        const std::string qs = a.query_slope ? fixed(*a.query_slope) : "";
        const std::string gs = a.generation_slope ? fixed(*a.generation_slope) : "";
        for (const auto& s : a.sizes) {
            out += s.algo_id + ',' + std::to_string(s.n) + ',' + std::to_string(s.mu) + ',' +
                   std::to_string(s.lambda) + ',' + std::to_string(s.trials) + ',' + fixed(s.success_rate) + ',' +
                   fixed(s.queries.mean) + ',' + fixed(s.queries.median) + ',' + fixed(s.queries.p10) + ',' +
                   fixed(s.queries.p90) + ',' + fixed(s.generations.mean) + ',' + fixed(s.generations.median) +
                   ',' + fixed(s.generations.p10) + ',' + fixed(s.generations.p90) + ',' + failure_histogram(s) +
                   ',' + qs + ',' + gs + '\n';
        }
    }
    return out;
}

std::string summary_to_json(const Summary& summary)
{
    ordered_json arr = ordered_json::array();
    for (const auto& a : summary.algos) {
        ordered_json o;
        o["algo"] = a.algo_id;
        o["query_slope"] = a.query_slope ? ordered_json(*a.query_slope) : ordered_json(nullptr);
        o["generation_slope"] = a.generation_slope ? ordered_json(*a.generation_slope) : ordered_json(nullptr);
        ordered_json sizes = ordered_json::array();
        for (const auto& s : a.sizes) {
            ordered_json e;
            e["n"] = s.n;
            e["mu"] = s.mu;
            e["lambda"] = s.lambda;
            e["trials"] = s.trials;
            e["success_rate"] = s.success_rate;
            e["queries"] = quantiles_json(s.queries);
            e["generations"] = quantiles_json(s.generations);
            ordered_json failures = ordered_json::object();
            for (const auto& [cause, count] : s.failures)
                failures[std::string(to_string(cause))] = count;
            e["failures"] = failures;
            sizes.push_back(e);
        }
        o["sizes"] = sizes;
        arr.push_back(o);
    }
    return arr.dump(2) + '\n';
}

std::string emit_summary(const Summary& summary, OutputFormat format)
{
    return format == OutputFormat::json ? summary_to_json(summary) : summary_to_csv(summary);
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace bbox
