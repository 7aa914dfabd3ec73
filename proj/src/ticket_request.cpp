#include "mova/ticket_request.hpp"

#include <charconv>
#include <chrono>
#include <sstream>

#include "mova/error.hpp"
#include "mova/params.hpp"

namespace mova {

namespace {

constexpr std::string_view kSentinel = "MOVA";

void check_field(std::string_view name, std::string_view value)
{
    if (value.empty()) {
        throw DomainError("ticket request: " + std::string(name) + " is empty");
    }
    for (char ch : value) {
        if (ch == '|') {
            throw DomainError("ticket request: " + std::string(name) + " contains '|'");
        }
        if (ch < 0x20 || ch > 0x7e) {
            throw DomainError("ticket request: " + std::string(name) + " is not printable ASCII");
        }
    }
}

std::optional<int> parse_int(std::string_view text)
{
    int value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

bool is_iso_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return false;
    }
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (text[i] < '0' || text[i] > '9') {
            return false;
        }
    }
    auto y = parse_int(text.substr(0, 4));
    auto m = parse_int(text.substr(5, 2));
    auto d = parse_int(text.substr(8, 2));
    using namespace std::chrono;
    return year_month_day{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}}.ok();
}

void TicketRequest::validate() const
{
    check_field("from", from);
    check_field("to", to);
    check_field("date", date);
    check_field("passenger", passenger);
    if (!is_iso_date(date)) {
        throw DomainError("ticket request: date must be YYYY-MM-DD");
    }
    if (travel_class != 1 && travel_class != 2) {
        throw DomainError("ticket request: class must be 1 or 2");
    }
    const std::size_t length = kSentinel.size() + 5 + from.size() + to.size() + date.size() + 1 + passenger.size();
    if (length > kMaxMessageLength) {
        throw DomainError("ticket request: message would be " + std::to_string(length) + " characters, limit " +
                          std::to_string(kMaxMessageLength));
    }
}

std::string TicketRequest::render() const
{
    validate();
    return std::string(kSentinel) + "|" + from + "|" + to + "|" + date + "|" + std::to_string(travel_class) + "|" +
           passenger;
}

std::optional<TicketRequest> TicketRequest::parse(std::string_view message)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = message.find('|', start);
        fields.push_back(message.substr(start, bar == std::string_view::npos ? bar : bar - start));
        if (bar == std::string_view::npos) {
            break;
        }
        start = bar + 1;
    }
    if (fields.size() != 6 || fields[0] != kSentinel || fields[4].size() != 1) {
        return std::nullopt;
    }
    auto cls = parse_int(fields[4]);
    if (!cls) {
        return std::nullopt;
    }
    TicketRequest request{std::string(fields[1]), std::string(fields[2]), std::string(fields[3]), *cls,
                          std::string(fields[5])};
    try {
        request.validate();
    } catch (const DomainError&) {
        return std::nullopt;
    }
    return request;
}

std::vector<std::string> parse_station_list(std::string_view text)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        out.push_back(line.substr(first));
    }
    return out;
}

}  // namespace mova
