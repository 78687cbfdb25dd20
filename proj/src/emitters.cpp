#include <sstream>

#include "circuitarray/circuit_tables.hpp"
#include "json.hpp"

namespace circuitarray {

namespace {

std::string cell_text(const CircuitArrayTable& table, int i, int j) {
    const RationalFunction& f = table.at(i, j);
    if (table.variant() == ArrayVariant::Numeric) return to_string(f.constant_value());
    return f.to_string();
}

}  // namespace

std::string table_to_markdown(const CircuitArrayTable& table) {
    std::ostringstream os;
    int maxRow = table.max_row();
    os << "| i \\ j |";
    for (int j = 1; j <= table.max_column(); ++j) os << " " << j << " |";
    os << "\n|---|";
    for (int j = 1; j <= table.max_column(); ++j) os << "---|";
    os << "\n";
    for (int i = 0; i <= maxRow; ++i) {
        os << "| " << i << " |";
        for (int j = 1; j <= table.max_column(); ++j) {
            os << " " << (table.has(i, j) ? cell_text(table, i, j) : "") << " |";
        }
        os << "\n";
    }
    return os.str();
}

std::string table_to_json(const CircuitArrayTable& table) {
    nlohmann::json j;
    j["variant"] = variant_name(table.variant());
    j["maxJ"] = table.max_column();
    j["variables"] = table.variables();
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, value] : table.entries()) {
        nlohmann::json e;
        e["i"] = key.first;
        e["j"] = key.second;
        if (table.variant() == ArrayVariant::Numeric) {
            e["value"] = to_string(value.constant_value());
        } else {
            auto c = value.canonical();
            e["num"] = c.numPrimitive.to_string();
            e["den"] = c.denPrimitive.to_string();
            e["content"] = to_string(c.content);
        }
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j.dump(2);
}

std::string table_to_csv(const CircuitArrayTable& table) {
    std::ostringstream os;
    os << "i,j,num,den\n";
    for (const auto& [key, value] : table.entries()) {
        os << key.first << "," << key.second << "," << value.numerator_part().to_string() << ","
           << value.denominator_part().to_string() << "\n";
    }
    return os.str();
}

}  // namespace circuitarray
