import init, { enumerateTrees, hookPolynomial, kmSeries } from "./pkg/hooktree_web.js";

const SVG = "http://www.w3.org/2000/svg";

function el(name, attrs = {}, parent) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (parent) parent.appendChild(node);
  return node;
}

function values(form) {
  return Object.fromEntries(new FormData(form).entries());
}

function status(section, text, isError = false) {
  const p = section.querySelector(".status");
  p.textContent = text;
  p.classList.toggle("error", isError);
}

// Lays out nested arrays: leaves get consecutive columns, parents sit over
// the middle of their children. Returns vertices in preorder.
function layout(tree, depth, next, out) {
  const id = out.length;
  const vertex = { depth, children: [] };
  out.push(vertex);
  if (tree.length === 0) {
    vertex.x = next.col++;
  } else {
    for (const child of tree) vertex.children.push(layout(child, depth + 1, next, out));
    const xs = vertex.children.map((c) => out[c].x);
    vertex.x = (xs[0] + xs[xs.length - 1]) / 2;
  }
  return id;
}

function drawItem(item, gallery) {
  const vertices = [];
  const next = { col: 0 };
  for (const tree of item.trees) layout(tree, 0, next, vertices);
  const step = 22;
  const depth = Math.max(0, ...vertices.map((v) => v.depth));
  const width = Math.max(1, next.col) * step + 10;
  const svg = el("svg", { width, height: (depth + 1) * step + 14 }, gallery);
  const pos = (v) => [v.x * step + step / 2 + 5, v.depth * step + step / 2 + 4];
  for (const v of vertices) {
    for (const c of v.children) {
      const [x1, y1] = pos(v);
      const [x2, y2] = pos(vertices[c]);
      el("line", { x1, y1, x2, y2 }, svg);
    }
  }
  const crucial = new Set(item.crucial || []);
  vertices.forEach((v, i) => {
    const [cx, cy] = pos(v);
    const hook = item.hooks ? item.hooks[i] : null;
    let cls = v.children.length === 0 && hook == null ? "leaf" : "";
    if (crucial.has(i)) cls = "crucial";
    el("circle", { cx, cy, r: hook == null ? 4 : 8, class: cls }, svg);
    if (hook != null) el("text", { x: cx, y: cy }, svg).textContent = hook;
  });
  if (item.trees.length === 0) el("text", { x: width / 2, y: 12 }, svg).textContent = "∅";
}

function runTrees(section) {
  const v = values(section.querySelector("form"));
  const gallery = section.querySelector(".gallery");
  gallery.replaceChildren();
  try {
    const data = JSON.parse(enumerateTrees(v.family, +v.k, +v.m, +v.n));
    status(section, `${data.count} structures`);
    for (const item of data.items) drawItem(item, gallery);
  } catch (e) {
    status(section, String(e), true);
  }
}

function runPoly(section) {
  const v = values(section.querySelector("form"));
  const svg = section.querySelector(".plot");
  svg.replaceChildren();
  let data;
  try {
    data = JSON.parse(hookPolynomial(v.family, +v.m, +v.n, +v.lo, +v.hi));
  } catch (e) {
    status(section, String(e), true);
    return;
  }
  status(section, "");
  section.querySelector(".coeffs").textContent =
    `coefficients (ascending): ${data.display}\nH(0..4) = ${data.values.join(", ")}`;

  const [w, h, pad] = [480, 280, 24];
  const pts = data.curve.filter(([, y]) => Number.isFinite(y));
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(0, ...ys), Math.max(0, ...ys)];
  if (y0 === y1) y1 = y0 + 1;
  const sx = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);
  el("line", { x1: pad, x2: w - pad, y1: sy(0), y2: sy(0), class: "axis" }, svg);
  if (x0 <= 0 && x1 >= 0) el("line", { x1: sx(0), x2: sx(0), y1: pad, y2: h - pad, class: "axis" }, svg);
  const d = pts.map(([x, y], i) => `${i ? "L" : "M"}${sx(x).toFixed(1)},${sy(y).toFixed(1)}`).join("");
  el("path", { d, class: "curve" }, svg);
  data.values.forEach((value, k) => {
    const [num, den = "1"] = value.split("/");
    const y = Number(num) / Number(den);
    if (k >= x0 && k <= x1) el("circle", { cx: sx(k), cy: sy(y), r: 3, class: "point" }, svg);
  });
}

function runSeries(section) {
  const v = values(section.querySelector("form"));
  const body = section.querySelector("tbody");
  body.replaceChildren();
  try {
    const data = JSON.parse(kmSeries(+v.k, +v.m, +v.order));
    let bad = 0;
    for (const row of data.rows) {
      const tr = document.createElement("tr");
      for (const text of [row.n, row.series, row.closed, row.agree ? "=" : "≠"]) {
        const td = document.createElement("td");
        td.textContent = text;
        if (!row.agree) td.className = "bad";
        tr.appendChild(td);
      }
      body.appendChild(tr);
      if (!row.agree) bad++;
    }
    status(section, bad ? `${bad} coefficients disagree` : "all coefficients match the closed form", bad > 0);
  } catch (e) {
    status(section, String(e), true);
  }
}

await init();

for (const [id, run] of [["trees", runTrees], ["poly", runPoly], ["series", runSeries]]) {
  const section = document.getElementById(id);
  section.querySelector("form").addEventListener("submit", (e) => {
    e.preventDefault();
    run(section);
  });
  run(section);
}
