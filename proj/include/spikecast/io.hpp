#pragma once

#include <string>
#include <vector>

#include "spikecast/centrality.hpp"
#include "spikecast/codec.hpp"
#include "spikecast/pipeline.hpp"
#include "spikecast/rsnn.hpp"
#include "spikecast/series.hpp"
#include "spikecast/tda.hpp"

namespace spikecast {

// Shortest round-trip decimal form of v; "inf"/"-inf"/"nan" for non-finite.
std::string format_double(double v);

struct Dataset {
    TimeSeries series;
    std::vector<int> labels;  // per-row anomaly flags when the file has them
};

// CSV with a header row; the first column is a strictly increasing timestamp.
// Rows with a missing or non-numeric value fail with the row number. A column
// named is_anomaly (or label) is kept as metadata.
Dataset load_dataset_csv(const std::string& path, const std::string& value_column = "value");

TimeSeries load_series_csv(const std::string& path, const std::string& value_column = "value");

void save_series_csv(const std::string& path, const TimeSeries& series);         // t,value
void save_raster_csv(const std::string& path, const SpikeRaster& raster);        // channel,step
void save_topology_csv(const std::string& path, const Topology& topo);           // pre,post,weight,plastic
void save_scores_csv(const std::string& path, const CentralityResult& scores);   // node,score
void save_diagram_csv(const std::string& path, const PersistenceDiagram& d);     // dim,birth,death
void save_record_csv(const std::string& path, const RunRecord& record);          // t,observed,predicted,rmse,d_w,refit

}  // namespace spikecast
