#include "cobosons/io.hpp"

#include "cobosons/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cobosons::io {

namespace {

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token)
{
    token = trim(token);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw InvalidArgument("not a number: '" + std::string(token) + "'");
    return value;
}

std::vector<double> split_numbers(std::string_view text, char separator)
{
    std::vector<double> values;
    while (!text.empty()) {
        const auto cut = text.find(separator);
        const std::string_view token = text.substr(0, cut);
        if (!trim(token).empty())
            values.push_back(parse_double(token));
        if (cut == std::string_view::npos)
            break;
        text.remove_prefix(cut + 1);
    }
    return values;
}

} // namespace

SchmidtDistribution parse_lambda_text(std::string_view text)
{
    const std::string_view body = trim(text);
    if (body.empty())
        throw InvalidArgument("empty lambda input");

    if (body.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("malformed lambda JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("lambda") || !doc["lambda"].is_array())
            throw InvalidArgument("lambda JSON must be an object with a \"lambda\" array");
        std::vector<double> values;
        for (const auto& v : doc["lambda"]) {
            if (!v.is_number())
                throw InvalidArgument("lambda entries must be numbers");
            values.push_back(v.get<double>());
        }
        return SchmidtDistribution(values);
    }

    std::string_view rest = body;
    const auto eol = rest.find('\n');
    if (trim(rest.substr(0, eol)) != "lambda")
        throw InvalidArgument("lambda CSV must start with the header \"lambda\"");
    if (eol == std::string_view::npos)
        throw InvalidArgument("lambda CSV has no values");
    rest.remove_prefix(eol + 1);
    return SchmidtDistribution(split_numbers(rest, '\n'));
}

SchmidtDistribution read_lambda_file(const std::filesystem::path& path)
{
    return parse_lambda_text(read_text(path));
}

SchmidtDistribution parse_inline_lambdas(std::string_view text)
{
    return SchmidtDistribution(split_numbers(text, ','));
}

std::vector<CountingDistribution> parse_observations(std::string_view text, const BeamSplitter& bs)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed observation JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw InvalidArgument("observations must be a JSON array");

    std::vector<CountingDistribution> out;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("n1") || !entry.contains("n2") || !entry.contains("p"))
            throw InvalidArgument("each observation needs \"n1\", \"n2\" and \"p\"");
        if (!entry["n1"].is_number_integer() || !entry["n2"].is_number_integer() || !entry["p"].is_array())
            throw InvalidArgument("observation fields have the wrong type");
        const FockPair pair(entry["n1"].get<int>(), entry["n2"].get<int>());
        const auto& p = entry["p"];
        if (static_cast<int>(p.size()) != pair.total() + 1)
            throw InvalidArgument("observation (" + std::to_string(pair.upper()) + "," + std::to_string(pair.lower()) +
                                  ") needs " + std::to_string(pair.total() + 1) + " probabilities");
        Eigen::VectorXd probabilities(pair.total() + 1);
        for (std::size_t m = 0; m < p.size(); ++m) {
            if (!p[m].is_number())
                throw InvalidArgument("probabilities must be numbers");
            const double v = p[m].get<double>();
            if (!(v >= 0.0 && v <= 1.0))
                throw InvalidArgument("probabilities must lie in [0, 1]");
            probabilities[static_cast<Eigen::Index>(m)] = v;
        }
        if (std::abs(probabilities.sum() - 1.0) > 1e-6)
            throw InvalidArgument("observed probabilities do not sum to 1");
        out.push_back({std::move(probabilities), pair, bs.reflectivity()});
    }
    return out;
}

std::vector<CountingDistribution> read_observations(const std::filesystem::path& path, const BeamSplitter& bs)
{
    return parse_observations(read_text(path), bs);
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void write_atomically(const std::filesystem::path& path, std::string_view content)
{
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InvalidArgument("cannot write " + temp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw InvalidArgument("write failed for " + temp.string());
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::filesystem::remove(temp);
        throw InvalidArgument("cannot move output into " + path.string() + ": " + ec.message());
    }
}

} // namespace cobosons::io
