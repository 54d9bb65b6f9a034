/**
 * Error-free-SNR figure: for each scheme, the SNR at which BER crosses the
 * error-free threshold, plotted on linear axes against the inverse packing
 * ratio 1/alpha. Each scheme needs at least two points to draw a trend.
 */

import {
  FigureSpec,
  Series,
  linearScale,
  linearTicks,
  renderFigure,
  MARGIN,
} from "./figure";
import { ErrorFreeRow } from "./schema";
import { PlotDataError } from "./ber";

const WIDTH = 640;
const HEIGHT = 480;

export function errorFreeSeries(rows: ErrorFreeRow[]): Series[] {
  if (rows.length === 0) {
    throw new PlotDataError("no data rows: nothing to plot");
  }
  const groups = new Map<string, ErrorFreeRow[]>();
  for (const row of rows) {
    const g = groups.get(row.scheme) ?? [];
    g.push(row);
    groups.set(row.scheme, g);
  }
  const series: Series[] = [];
  for (const [scheme, g] of groups.entries()) {
    if (g.length < 2) {
      throw new PlotDataError(
        `scheme "${scheme}" has ${g.length} point(s); at least 2 are needed`,
      );
    }
    series.push({
      scheme,
      label: scheme,
      points: g
        .slice()
        .sort((a, b) => a.inv_alpha - b.inv_alpha)
        .map((r) => ({ x: r.inv_alpha, y: r.snr_db })),
    });
  }
  return series;
}

export function renderErrorFree(rows: ErrorFreeRow[]): string {
  const series = errorFreeSeries(rows);
  const xs = rows.map((r) => r.inv_alpha);
  const ys = rows.map((r) => r.snr_db);
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (yLo === yHi) {
    yLo -= 1;
    yHi += 1;
  }
  const pad = 0.05 * (yHi - yLo);
  yLo -= pad;
  yHi += pad;
  const spec: FigureSpec = {
    width: WIDTH,
    height: HEIGHT,
    xLabel: "1/alpha",
    yLabel: "error-free SNR (dB)",
    xDomain: [xLo, xHi],
    yDomain: [yLo, yHi],
    xTicks: linearTicks(xLo, xHi, 6),
    yTicks: linearTicks(yLo, yHi, 8).map((v) => ({
      value: v,
      text: Number(v.toFixed(4)).toString(),
    })),
    xScale: linearScale([xLo, xHi], [MARGIN.left, WIDTH - MARGIN.right]),
    yScale: linearScale([yLo, yHi], [HEIGHT - MARGIN.bottom, MARGIN.top]),
    series,
  };
  return renderFigure(spec);
}
