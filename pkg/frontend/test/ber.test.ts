import { describe, expect, test } from "vitest";
import { renderBer, PlotDataError } from "../src/ber";
import { parseBerCsv, SchemaError } from "../src/schema";
import { schemeStyle } from "../src/figure";

const HEADER =
  "scheme,alpha,beta,nu,N,channel,snr_db,frames,bits,bit_errors,ber,wall_seconds,seed";

function csv(rows: string[]): string {
  return [HEADER, ...rows].join("\n") + "\n";
}

function row(scheme: string, alpha: number, snr: number, ber: number): string {
  return `${scheme},${alpha},0.5,10,8192,awgn,${snr},10,40950,${Math.round(ber * 40950)},${ber},1.0,1`;
}

const countSeries = (svg: string) => (svg.match(/class="series"/g) ?? []).length;
const countMarkers = (svg: string) =>
  (svg.match(/class="marker"/g) ?? []).length;

describe("renderBer", () => {
  test("single series gives one curve and a five-decade y-axis", () => {
    const rows = parseBerCsv(
      csv([row("a", 0.73, 0, 0.1), row("a", 0.73, 1, 0.01), row("a", 0.73, 2, 1e-4)]),
    );
    const svg = renderBer(rows);
    expect(countSeries(svg)).toBe(1);
    expect(svg).toContain(">1<");
    expect(svg).toContain(">1e-5<");
    expect(svg).toContain(">1e-1<");
    // markers appear in the plot and once per series in the legend
    expect(countMarkers(svg)).toBe(3 + 1);
  });

  test("two schemes at the same alpha give two distinguishable series", () => {
    const rows = parseBerCsv(
      csv([
        row("first", 0.73, 0, 0.1),
        row("first", 0.73, 1, 0.01),
        row("second", 0.73, 0, 0.2),
        row("second", 0.73, 1, 0.02),
      ]),
    );
    const svg = renderBer(rows);
    expect(countSeries(svg)).toBe(2);
    const a = schemeStyle("first");
    const b = schemeStyle("second");
    expect(a.color !== b.color || a.dash !== b.dash || a.marker !== b.marker).toBe(
      true,
    );
    expect(svg).toContain("first (alpha=0.73)");
    expect(svg).toContain("second (alpha=0.73)");
  });

  test("same scheme at two alphas gives two series with one shared style", () => {
    const rows = parseBerCsv(
      csv([
        row("x", 0.45, 0, 0.1),
        row("x", 0.45, 1, 0.01),
        row("x", 0.73, 0, 0.2),
        row("x", 0.73, 1, 0.02),
      ]),
    );
    const svg = renderBer(rows);
    expect(countSeries(svg)).toBe(2);
    expect(svg).toContain("x (alpha=0.45)");
    expect(svg).toContain("x (alpha=0.73)");
  });

  test("empty CSV raises rather than rendering", () => {
    expect(() => renderBer(parseBerCsv(HEADER + "\n"))).toThrow(PlotDataError);
  });

  test("zero-BER points are dropped from the log-scale curve", () => {
    const rows = parseBerCsv(
      csv([row("a", 0.73, 0, 0.1), row("a", 0.73, 1, 0)]),
    );
    const svg = renderBer(rows);
    expect(countSeries(svg)).toBe(1);
    expect(countMarkers(svg)).toBe(1 + 1); // one plotted point + legend swatch
  });

  test("rendering is deterministic and independent of row order", () => {
    const a = parseBerCsv(csv([row("a", 0.73, 0, 0.1), row("a", 0.73, 1, 0.01)]));
    const b = parseBerCsv(csv([row("a", 0.73, 1, 0.01), row("a", 0.73, 0, 0.1)]));
    expect(renderBer(a)).toBe(renderBer(b));
    expect(renderBer(a)).toBe(renderBer(a));
  });

  test("missing column is reported by name", () => {
    const bad = "scheme,alpha\nfoo,0.5\n";
    expect(() => parseBerCsv(bad, "bad.csv")).toThrow(/snr_db/);
    expect(() => parseBerCsv(bad, "bad.csv")).toThrow(/bad\.csv/);
  });

  test("non-numeric field is reported with row and column", () => {
    const bad = csv(["a,oops,0.5,10,8192,awgn,0,10,100,1,0.01,1.0,1"]);
    expect(() => parseBerCsv(bad, "bad.csv")).toThrow(SchemaError);
    expect(() => parseBerCsv(bad, "bad.csv")).toThrow(/column "alpha"/);
  });

  test("threshold option draws a horizontal reference line", () => {
    const rows = parseBerCsv(csv([row("a", 0.73, 0, 0.1), row("a", 0.73, 1, 0.01)]));
    const svg = renderBer(rows, { threshold: 1e-4 });
    expect(svg).toContain('class="threshold"');
    expect(svg).toContain("BER = 0.0001");
    expect(renderBer(rows)).not.toContain('class="threshold"');
  });

  test("scheme style is a pure function of the scheme id", () => {
    expect(schemeStyle("three-stage-a0.73-proposed")).toEqual(
      schemeStyle("three-stage-a0.73-proposed"),
    );
  });
});
