import init, { demo_bracket, demo_robustness, demo_bound_curve } from "./pkg/knockout_web.js";

const $ = (id) => document.getElementById(id);
const SVG_NS = "http://www.w3.org/2000/svg";

function el(tag, attrs, text) {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function fmt(x, digits = 5) {
  if (x === 0) return "0";
  if (Math.abs(x) >= 0.001 && Math.abs(x) < 10000) return x.toFixed(digits);
  return x.toExponential(3);
}

// Single-elimination tree: column 0 holds the board order, each later
// column the survivors of the previous round's pairs.
function drawBracket(result) {
  const board = result.board;
  const roundCount = result.rounds.length;
  const slotH = 26;
  const colW = 86;
  const width = (roundCount + 1) * colW + 60;
  const height = board.length * slotH + 20;
  const svg = el("svg", { width, height, viewBox: `0 0 ${width} ${height}` });

  const columns = [board.map((c, i) => ({ c, y: 10 + i * slotH + slotH / 2 }))];
  for (let r = 0; r < roundCount; r++) {
    const prev = columns[r];
    const next = [];
    for (let i = 0; i < prev.length; i += 2) {
      const match = result.rounds[r][i / 2];
      next.push({ c: match.winner, y: (prev[i].y + prev[i + 1].y) / 2 });
    }
    columns.push(next);
  }

  for (let r = 0; r + 1 < columns.length; r++) {
    const next = columns[r + 1];
    columns[r].forEach((node, i) => {
      const target = next[Math.floor(i / 2)];
      const survived = node.c === target.c;
      svg.appendChild(el("path", {
        d: `M ${r * colW + 64} ${node.y} H ${(r + 1) * colW - 4} V ${target.y} H ${(r + 1) * colW + 8}`,
        fill: "none",
        stroke: survived ? "#2f7fd2" : "#c6ccd4",
        "stroke-width": survived ? 2 : 1,
      }));
    });
  }

  columns.forEach((column, r) => {
    column.forEach((node) => {
      const champion = r === roundCount && node.c === result.champion;
      svg.appendChild(el("rect", {
        x: r * colW + 8, y: node.y - 10, width: 56, height: 20, rx: 4,
        fill: champion ? "#2f7fd2" : "white",
        stroke: champion ? "#2a6fb8" : "#b9c2cd",
      }));
      svg.appendChild(el("text", {
        x: r * colW + 36, y: node.y + 4,
        "text-anchor": "middle", "font-size": 12,
        fill: champion ? "white" : "#1c2430",
      }, String(node.c)));
    });
  });

  return svg;
}

function runBracket() {
  const n = Number($("bracket-n").value);
  const target = Number($("bracket-target").value);
  $("bracket-target").max = 2 ** n;
  const result = JSON.parse(demo_bracket(n, target));
  const readout = $("bracket-readout");
  const view = $("bracket-view");
  view.replaceChildren();
  if (result.error) {
    readout.innerHTML = `<span class="error">${result.error}</span>`;
    return;
  }
  const seeds = result.top_seeds_split === null || result.top_seeds_split === undefined
    ? ""
    : `; top two seeds ${result.top_seeds_split ? "land in opposite halves" : "share a half"}`;
  readout.innerHTML =
    `champion <b>${result.champion}</b> out of ${result.board.length} candidates${seeds}`;
  view.appendChild(drawBracket(result));
}

function runRobustness() {
  const level = Number($("rob-level").value);
  const lambda = Number($("rob-lambda").value);
  const trials = Number($("rob-trials").value);
  const seed = Number($("rob-seed").value);
  const result = JSON.parse(demo_robustness(level, lambda, trials, seed));
  const readout = $("rob-readout");
  if (result.error) {
    readout.innerHTML = `<span class="error">${result.error}</span>`;
    return;
  }
  const verdict = result.estimate <= result.bound
    ? `<span class="ok">within the bound</span>`
    : `<span class="error">above the bound</span>`;
  readout.innerHTML =
    `mismatches <b>${result.mismatches}</b> / ${result.trials}` +
    ` (estimate <b>${fmt(result.estimate)}</b> &pm; ${fmt(result.ci_halfwidth)})` +
    ` vs bound <b>${fmt(result.bound)}</b>: ${verdict}`;
}

function drawCurve(result) {
  const width = 640, height = 300, left = 60, bottom = 40;
  const svg = el("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const points = result.curve.filter((p) => p.bound > 0);
  const xMax = points[points.length - 1].lambda;
  const logs = points.map((p) => Math.log10(p.bound));
  const target = result.target > 0 ? Math.log10(result.target) : null;
  let lo = Math.min(...logs), hi = Math.max(...logs);
  if (target !== null) { lo = Math.min(lo, target); hi = Math.max(hi, target); }
  const pad = 0.5;
  lo -= pad; hi += pad;

  const px = (lambda) => left + (lambda / xMax) * (width - left - 20);
  const py = (logB) => 10 + (hi - logB) / (hi - lo) * (height - bottom - 10);

  for (let d = Math.ceil(lo); d <= Math.floor(hi); d++) {
    svg.appendChild(el("line", {
      x1: left, y1: py(d), x2: width - 20, y2: py(d),
      stroke: "#e4e8ee",
    }));
    svg.appendChild(el("text", {
      x: left - 8, y: py(d) + 4, "text-anchor": "end", "font-size": 11, fill: "#5a6472",
    }, `1e${d}`));
  }
  for (let k = 0; k <= 4; k++) {
    const lambda = (xMax * k) / 4;
    svg.appendChild(el("text", {
      x: px(lambda), y: height - 18, "text-anchor": "middle", "font-size": 11, fill: "#5a6472",
    }, lambda.toFixed(0)));
  }
  svg.appendChild(el("text", {
    x: (left + width - 20) / 2, y: height - 2, "text-anchor": "middle",
    "font-size": 11, fill: "#5a6472",
  }, "total intensity"));

  if (target !== null) {
    svg.appendChild(el("line", {
      x1: left, y1: py(target), x2: width - 20, y2: py(target),
      stroke: "#b33030", "stroke-dasharray": "5 4",
    }));
  }
  svg.appendChild(el("polyline", {
    points: points.map((p) => `${px(p.lambda)},${py(Math.log10(p.bound))}`).join(" "),
    fill: "none", stroke: "#2f7fd2", "stroke-width": 2,
  }));
  if (result.min_lambda !== null && result.min_lambda <= xMax) {
    svg.appendChild(el("circle", {
      cx: px(result.min_lambda), cy: py(target), r: 4, fill: "#b33030",
    }));
  }
  return svg;
}

function runCurve() {
  const level = Number($("curve-level").value);
  const max = Number($("curve-max").value);
  const target = Number($("curve-target").value);
  const result = JSON.parse(demo_bound_curve(level, max, 160, target));
  const readout = $("curve-readout");
  const view = $("curve-view");
  view.replaceChildren();
  if (result.error) {
    readout.innerHTML = `<span class="error">${result.error}</span>`;
    return;
  }
  const min = result.min_lambda === null
    ? "target not reachable"
    : `bound reaches ${fmt(target)} at intensity <b>${fmt(result.min_lambda, 2)}</b>`;
  readout.innerHTML = `${result.pair_count} candidate pairs; ${min}`;
  view.appendChild(drawCurve(result));
}

await init();
$("bracket-run").addEventListener("click", runBracket);
$("rob-run").addEventListener("click", runRobustness);
$("curve-run").addEventListener("click", runCurve);
$("rob-lambda").addEventListener("input", () => {
  $("rob-lambda-show").textContent = $("rob-lambda").value;
});
runBracket();
runCurve();
