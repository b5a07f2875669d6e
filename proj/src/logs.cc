// Copyright 2026 The Topics Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topics_sim/logs.h"

#include <set>

#include "absl/status/status.h"
#include "fmt/ranges.h"
#include "topics_sim/strings.h"

namespace topics_sim {
namespace {

// Splits into lines, dropping the trailing empty line after a final LF.
std::vector<std::string_view> Lines(std::string_view csv) {
  std::vector<std::string_view> lines = Split(csv, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

absl::Status RowError(size_t line, std::string_view what) {
  return absl::InvalidArgumentError(
      StrCat("csv line ", line + 1, ": ", what));
}

absl::StatusOr<std::vector<std::vector<std::string_view>>> SplitTable(
    std::string_view csv, std::string_view header) {
  std::vector<std::string_view> lines = Lines(csv);
  if (lines.empty() || lines.front() != header) {
    return absl::InvalidArgumentError(
        StrCat("csv header mismatch: expected '", header, "'"));
  }
  const std::vector<std::string_view> names = Split(header, ',');
  const size_t columns = names.size();
  std::vector<std::vector<std::string_view>> table;
  table.reserve(lines.size() - 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string_view> fields = Split(lines[i], ',');
    if (fields.size() != columns) {
      return RowError(i, StrCat("expected ", columns, " fields, got ",
                                      fields.size()));
    }
    table.push_back(std::move(fields));
  }
  return table;
}

absl::StatusOr<int64_t> ParseInt(std::string_view field, size_t line) {
  int64_t value = 0;
  if (!ParseInt64(field, value)) {
    return RowError(line, StrCat("bad integer '", field, "'"));
  }
  return value;
}

absl::StatusOr<std::vector<int64_t>> ParseList(std::string_view field,
                                               size_t line) {
  std::vector<int64_t> values;
  if (field.empty()) return values;
  for (std::string_view part : Split(field, ';')) {
    absl::StatusOr<int64_t> value = ParseInt(part, line);
    if (!value.ok()) return value.status();
    values.push_back(*value);
  }
  return values;
}

// Parses the four query columns shared by both response logs.
absl::Status ParseQueryColumns(const std::vector<std::string_view>& fields,
                               size_t line, Epoch& epoch, UserId& user,
                               SiteId& site, CallerId& caller) {
  int64_t* targets[] = {&epoch, &user, &site, &caller};
  for (size_t i = 0; i < 4; ++i) {
    absl::StatusOr<int64_t> value = ParseInt(fields[i], line);
    if (!value.ok()) return value.status();
    *targets[i] = *value;
  }
  return absl::OkStatus();
}

}  // namespace

void AppendResponseRows(Epoch query_epoch, UserId user_id, SiteId site_id,
                        CallerId caller_id, const TopicsResponse& response,
                        std::vector<GroundTruthRow>& rows) {
  GroundTruthRow row{.epoch = query_epoch,
                     .user_id = user_id,
                     .site_id = site_id,
                     .caller_id = caller_id,
                     .entry = std::nullopt};
  if (response.entries.empty()) {
    rows.push_back(row);
    return;
  }
  for (const TopicsEntry& entry : response.entries) {
    row.entry = entry;
    rows.push_back(row);
  }
}

std::vector<CallerViewRow> ToCallerView(std::span<const GroundTruthRow> rows) {
  std::vector<CallerViewRow> view;
  view.reserve(rows.size());
  for (const GroundTruthRow& row : rows) {
    CallerViewRow out{.epoch = row.epoch,
                      .user_id = row.user_id,
                      .site_id = row.site_id,
                      .caller_id = row.caller_id,
                      .entry_epoch = std::nullopt,
                      .topic_id = std::nullopt};
    if (row.entry) {
      out.entry_epoch = row.entry->epoch;
      out.topic_id = row.entry->topic;
    }
    view.push_back(out);
  }
  return view;
}

std::string FormatGroundTruthCsv(std::span<const GroundTruthRow> rows) {
  std::string out = StrCat(kGroundTruthHeader, "\n");
  for (const GroundTruthRow& row : rows) {
    StrAppend(out, row.epoch, ",", row.user_id, ",", row.site_id, ",",
                    row.caller_id, ",");
    if (row.entry) {
      StrAppend(out, row.entry->epoch, ",", row.entry->topic, ",",
                      row.entry->noise ? "true" : "false", "\n");
    } else {
      StrAppend(out, ",,\n");
    }
  }
  return out;
}

std::string FormatCallerViewCsv(std::span<const CallerViewRow> rows) {
  std::string out = StrCat(kCallerViewHeader, "\n");
  for (const CallerViewRow& row : rows) {
    StrAppend(out, row.epoch, ",", row.user_id, ",", row.site_id, ",",
                    row.caller_id, ",");
    if (row.entry_epoch && row.topic_id) {
      StrAppend(out, *row.entry_epoch, ",", *row.topic_id, "\n");
    } else {
      StrAppend(out, ",\n");
    }
  }
  return out;
}

absl::StatusOr<std::vector<GroundTruthRow>> ParseGroundTruthCsv(
    std::string_view csv) {
  auto table = SplitTable(csv, kGroundTruthHeader);
  if (!table.ok()) return table.status();
  std::vector<GroundTruthRow> rows;
  rows.reserve(table->size());
  for (size_t i = 0; i < table->size(); ++i) {
    const auto& fields = (*table)[i];
    GroundTruthRow row;
    if (absl::Status status = ParseQueryColumns(fields, i + 1, row.epoch,
                                                row.user_id, row.site_id,
                                                row.caller_id);
        !status.ok()) {
      return status;
    }
    if (fields[4].empty() && fields[5].empty() && fields[6].empty()) {
      rows.push_back(row);
      continue;
    }
    TopicsEntry entry;
    absl::StatusOr<int64_t> entry_epoch = ParseInt(fields[4], i + 1);
    if (!entry_epoch.ok()) return entry_epoch.status();
    absl::StatusOr<int64_t> topic = ParseInt(fields[5], i + 1);
    if (!topic.ok()) return topic.status();
    if (fields[6] != "true" && fields[6] != "false") {
      return RowError(i + 1, StrCat("bad noise flag '", fields[6], "'"));
    }
    entry.epoch = *entry_epoch;
    entry.topic = *topic;
    entry.noise = fields[6] == "true";
    row.entry = entry;
    rows.push_back(row);
  }
  return rows;
}

absl::StatusOr<std::vector<CallerViewRow>> ParseCallerViewCsv(
    std::string_view csv) {
  auto table = SplitTable(csv, kCallerViewHeader);
  if (!table.ok()) return table.status();
  std::vector<CallerViewRow> rows;
  rows.reserve(table->size());
  for (size_t i = 0; i < table->size(); ++i) {
    const auto& fields = (*table)[i];
    CallerViewRow row;
    if (absl::Status status = ParseQueryColumns(fields, i + 1, row.epoch,
                                                row.user_id, row.site_id,
                                                row.caller_id);
        !status.ok()) {
      return status;
    }
    if (!fields[4].empty() || !fields[5].empty()) {
      absl::StatusOr<int64_t> entry_epoch = ParseInt(fields[4], i + 1);
      if (!entry_epoch.ok()) return entry_epoch.status();
      absl::StatusOr<int64_t> topic = ParseInt(fields[5], i + 1);
      if (!topic.ok()) return topic.status();
      row.entry_epoch = *entry_epoch;
      row.topic_id = *topic;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string FormatTraceCsv(std::span<const VisitEvent> events) {
  std::string out = StrCat(kTraceHeader, "\n");
  for (const VisitEvent& event : events) {
    StrAppend(out, event.epoch, ",", event.user_id, ",", event.site_id,
                    ",", fmt::join(event.callers_present, ";"), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<VisitEvent>> ParseTraceCsv(std::string_view csv) {
  auto table = SplitTable(csv, kTraceHeader);
  if (!table.ok()) return table.status();
  std::vector<VisitEvent> events;
  events.reserve(table->size());
  for (size_t i = 0; i < table->size(); ++i) {
    const auto& fields = (*table)[i];
    VisitEvent event;
    int64_t* targets[] = {&event.epoch, &event.user_id, &event.site_id};
    for (size_t c = 0; c < 3; ++c) {
      absl::StatusOr<int64_t> value = ParseInt(fields[c], i + 1);
      if (!value.ok()) return value.status();
      *targets[c] = *value;
    }
    absl::StatusOr<std::vector<int64_t>> callers = ParseList(fields[3], i + 1);
    if (!callers.ok()) return callers.status();
    event.callers_present = std::move(*callers);
    events.push_back(std::move(event));
  }
  return events;
}

std::string FormatSitesCsv(const Population& population) {
  std::string out = StrCat(kSitesHeader, "\n");
  for (size_t i = 0; i < population.sites.size(); ++i) {
    const Site& site = population.sites[i];
    StrAppend(out, site.site_id, ",", site.hostname, ",");
    if (site.declared_topics) {
      StrAppend(out, fmt::join(*site.declared_topics, ";"));
    }
    StrAppend(out, ",", fmt::join(site.true_topics, ";"), ",",
              fmt::join(population.site_callers[i], ";"), "\n");
  }
  return out;
}

absl::StatusOr<Population> ParseSitesCsv(std::string_view csv) {
  auto table = SplitTable(csv, kSitesHeader);
  if (!table.ok()) return table.status();
  Population population;
  std::set<CallerId> callers;
  for (size_t i = 0; i < table->size(); ++i) {
    const auto& fields = (*table)[i];
    Site site;
    absl::StatusOr<int64_t> id = ParseInt(fields[0], i + 1);
    if (!id.ok()) return id.status();
    site.site_id = *id;
    site.hostname = std::string(fields[1]);
    absl::StatusOr<std::vector<int64_t>> declared = ParseList(fields[2], i + 1);
    if (!declared.ok()) return declared.status();
    if (!declared->empty()) site.declared_topics = std::move(*declared);
    absl::StatusOr<std::vector<int64_t>> truth = ParseList(fields[3], i + 1);
    if (!truth.ok()) return truth.status();
    site.true_topics = std::move(*truth);
    absl::StatusOr<std::vector<int64_t>> site_callers =
        ParseList(fields[4], i + 1);
    if (!site_callers.ok()) return site_callers.status();
    callers.insert(site_callers->begin(), site_callers->end());
    population.sites.push_back(std::move(site));
    population.site_callers.push_back(std::move(*site_callers));
  }
  population.callers.assign(callers.begin(), callers.end());
  return population;
}

std::string FormatUsersCsv(std::span<const UserProfile> users) {
  std::string out = StrCat(kUsersHeader, "\n");
  for (const UserProfile& user : users) {
    StrAppend(out, user.user_id, ",", user.attribute, ",",
                    user.top_interest, "\n");
  }
  return out;
}

absl::StatusOr<std::vector<UserProfile>> ParseUsersCsv(std::string_view csv) {
  auto table = SplitTable(csv, kUsersHeader);
  if (!table.ok()) return table.status();
  std::vector<UserProfile> users;
  users.reserve(table->size());
  for (size_t i = 0; i < table->size(); ++i) {
    const auto& fields = (*table)[i];
    UserProfile user;
    absl::StatusOr<int64_t> id = ParseInt(fields[0], i + 1);
    if (!id.ok()) return id.status();
    absl::StatusOr<int64_t> attribute = ParseInt(fields[1], i + 1);
    if (!attribute.ok()) return attribute.status();
    absl::StatusOr<int64_t> top = ParseInt(fields[2], i + 1);
    if (!top.ok()) return top.status();
    user.user_id = *id;
    user.attribute = static_cast<int>(*attribute);
    user.top_interest = *top;
    users.push_back(std::move(user));
  }
  return users;
}

std::string FormatCohortCsv(const CohortAssignment& assignment) {
  std::string out = StrCat(kCohortHeader, "\n");
  for (const auto& [user, label] : assignment.labels) {
    StrAppend(out, user, ",", label, ",", assignment.prefix_len, "\n");
  }
  return out;
}

}  // namespace topics_sim
